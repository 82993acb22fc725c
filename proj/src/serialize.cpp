#include "matspace/serialize.hpp"

namespace matspace {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing member \"") + key + "\"");
  return j.at(key);
}

std::size_t size_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string("\"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

mpq_class parse_fraction(const std::string& text) {
  mpq_class q;
  const auto slash = text.find('/');
  if (text.empty() || q.set_str(text, 10) != 0) bad("malformed scalar \"" + text + "\"");
  if (slash != std::string::npos && q.get_den() == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in \"" + text + "\"");
  q.canonicalize();
  return q;
}

}  // namespace

json to_json(const Field& f) {
  if (f.is_prime()) return json{{"kind", "prime"}, {"p", f.modulus()}};
  return json{{"kind", "rational"}};
}

Field field_from_json(const json& j) {
  if (j.is_string()) return Field::parse(j.get<std::string>());
  const json& kind = member(j, "kind");
  if (kind == "rational") return Field::rational();
  if (kind == "prime") return Field::prime(size_member(j, "p"));
  bad("unknown field kind");
}

json to_json(const Scalar& s) {
  if (s.field().is_prime()) return s.residue();
  const mpq_class& q = s.rational();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar scalar_from_json(const Field& f, const json& j) {
  mpq_class q;
  if (j.is_number_integer()) {
    q = mpz_class(std::to_string(j.get<long long>()));
  } else if (j.is_number_unsigned()) {
    q = mpz_class(std::to_string(j.get<unsigned long long>()));
  } else if (j.is_string()) {
    q = parse_fraction(j.get<std::string>());
  } else {
    bad("scalar must be an integer or an \"a/b\" string");
  }
  return f.from_fraction(q.get_num(), q.get_den());
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v.entries()) out.push_back(to_json(x));
  return out;
}

Vector vector_from_json(const Field& f, const json& j) {
  if (!j.is_array()) bad("vector must be an array");
  std::vector<Scalar> e;
  for (const auto& x : j) e.push_back(scalar_from_json(f, x));
  return Vector(f, std::move(e));
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  if (m.is_square()) return json{{"n", m.rows()}, {"rows", rows}};
  return json{{"shape", {m.rows(), m.cols()}}, {"rows", rows}};
}

Matrix matrix_from_json(const Field& f, const json& j) {
  const json& rows = j.is_array() ? j : member(j, "rows");
  if (!rows.is_array() || rows.empty()) bad("matrix rows must be a nonempty array");
  std::vector<std::vector<Scalar>> r;
  for (const auto& row : rows) r.push_back(vector_from_json(f, row).entries());
  const std::size_t cols = r.front().size();
  for (const auto& row : r)
    if (row.size() != cols) throw Error(ErrorCode::shape_mismatch, "ragged matrix rows");
  if (j.is_object() && j.contains("n")) {
    const std::size_t n = size_member(j, "n");
    if (r.size() != n || cols != n) throw Error(ErrorCode::shape_mismatch, "matrix is not " + std::to_string(n) + " x " + std::to_string(n));
  }
  return Matrix::from_rows(f, r);
}

json to_json(const VecSpace& w) {
  json basis = json::array();
  for (const auto& v : w.vectors()) basis.push_back(to_json(v));
  return json{{"ambient_dim", w.ambient_dim()}, {"dim", w.dim()}, {"basis", basis}};
}

VecSpace vecspace_from_json(const Field& f, const json& j) {
  const std::size_t n = size_member(j, "ambient_dim");
  std::vector<Vector> vs;
  for (const auto& v : member(j, "basis")) {
    vs.push_back(vector_from_json(f, v));
    if (vs.back().dim() != n) throw Error(ErrorCode::shape_mismatch, "basis vector has the wrong length");
  }
  return VecSpace::span(f, n, vs);
}

json to_json(const MatSpace& v) {
  json basis = json::array();
  for (const auto& m : v.basis()) basis.push_back(to_json(m));
  return json{{"field", to_json(v.field())}, {"n", v.n()}, {"dim", v.dim()}, {"basis", basis}};
}

MatSpace subspace_from_json(const json& j, const std::optional<Field>& override_field) {
  if (!j.is_object()) bad("subspace must be an object");
  std::optional<Field> f = override_field;
  if (j.contains("field")) {
    const Field doc = field_from_json(j.at("field"));
    if (f && !(*f == doc))
      throw Error(ErrorCode::field_mismatch, "document field " + doc.cli_name() + " differs from " + f->cli_name());
    f = doc;
  }
  if (!f) bad("no field given in the document or on the command line");
  const std::size_t n = size_member(j, "n");
  if (n == 0) throw Error(ErrorCode::shape_mismatch, "n must be positive");
  const char* key = j.contains("basis") ? "basis" : "generators";
  const json& list = member(j, key);
  if (!list.is_array()) bad(std::string("\"") + key + "\" must be an array");
  std::vector<Matrix> mats;
  for (const auto& m : list) {
    mats.push_back(matrix_from_json(*f, m));
    if (mats.back().rows() != n || mats.back().cols() != n) throw Error(ErrorCode::shape_mismatch, "basis matrix is not n x n");
  }
  return MatSpace::span(*f, n, mats);
}

json to_json(const Verdict& v) {
  json out{{"status", to_string(v.status)}, {"reason", v.reason}};
  if (v.witness.empty()) {
    out["witness"] = nullptr;
    return out;
  }
  json w = json::object();
  if (v.witness.matrix) w["matrix"] = to_json(*v.witness.matrix);
  if (v.witness.eigenvalue) w["eigenvalue"] = to_json(*v.witness.eigenvalue);
  if (v.witness.vector) w["vector"] = to_json(*v.witness.vector);
  if (v.witness.subspace) w["subspace"] = to_json(*v.witness.subspace);
  out["witness"] = w;
  return out;
}

Verdict verdict_from_json(const Field& f, const json& j) {
  Verdict v;
  const std::string status = member(j, "status").get<std::string>();
  if (status == "Holds") v.status = Status::holds;
  else if (status == "Fails") v.status = Status::fails;
  else if (status == "Unknown") v.status = Status::unknown;
  else bad("unknown verdict status \"" + status + "\"");
  if (j.contains("reason")) v.reason = j.at("reason").get<std::string>();
  if (j.contains("witness") && j.at("witness").is_object()) {
    const json& w = j.at("witness");
    if (w.contains("matrix")) v.witness.matrix = matrix_from_json(f, w.at("matrix"));
    if (w.contains("eigenvalue")) v.witness.eigenvalue = scalar_from_json(f, w.at("eigenvalue"));
    if (w.contains("vector")) v.witness.vector = vector_from_json(f, w.at("vector"));
    if (w.contains("subspace")) v.witness.subspace = vecspace_from_json(f, w.at("subspace"));
  }
  return v;
}

}  // namespace matspace
