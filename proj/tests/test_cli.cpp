#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "matspace/cli.hpp"
#include "matspace/report.hpp"

using namespace matspace;

namespace {

const std::string kGolden = GOLDEN_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

json load(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  return json::parse(in);
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("matspace_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

// Every emitted report passes verify through the same dispatcher.
void check_round_trip(const std::string& report) {
  const std::string path = temp_file("round_trip.json", report);
  Run v = run({"verify", "--input", path});
  CHECK(v.code == kExitOk);
  CHECK(json::parse(v.out).at("ok") == true);
}

}  // namespace

TEST_CASE("scalar and field json") {
  const Field q = Field::rational(), f7 = Field::prime(7);
  CHECK(to_json(f7) == json::parse(R"({"kind":"prime","p":7})"));
  CHECK(to_json(q) == json::parse(R"({"kind":"rational"})"));
  CHECK(field_from_json(to_json(f7)) == f7);
  CHECK(field_from_json(json("gf7")) == f7);
  CHECK(to_json(q.from_fraction(-6, 4)) == "-3/2");
  CHECK(to_json(q.from_int(5)) == "5/1");
  CHECK(to_json(f7.from_int(-1)) == 6);
  CHECK(scalar_from_json(q, json("4/6")) == q.from_fraction(2, 3));
  CHECK(scalar_from_json(q, json(-2)) == q.from_int(-2));
  CHECK(scalar_from_json(f7, json("1/2")) == f7.from_int(4));
  CHECK(scalar_from_json(f7, json(-1)) == f7.from_int(6));
  CHECK_THROWS_AS(scalar_from_json(q, json("x")), Error);
  CHECK_THROWS_AS(scalar_from_json(f7, json("1/7")), Error);
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"kind":"prime","p":8})")), Error);
}

TEST_CASE("matrix and subspace json round trip") {
  for (const Field& f : {Field::prime(3), Field::rational()}) {
    const Matrix m = Matrix::from_ints(f, {{1, -2}, {0, 5}});
    CHECK(to_json(m).at("n") == 2);
    CHECK(matrix_from_json(f, to_json(m)) == m);
    for (auto kind : {StandardKind::sym, StandardKind::alt, StandardKind::full}) {
      const MatSpace v = standard_space(kind, 3, f);
      CHECK(subspace_from_json(to_json(v)) == v);
      CHECK(to_json(subspace_from_json(to_json(v))) == to_json(v));
    }
  }
  const json bad = json::parse(R"({"field":{"kind":"prime","p":3},"n":2,"basis":[{"n":2,"rows":[[1,0],[0]]}]})");
  CHECK_THROWS_AS(subspace_from_json(bad), Error);
  const json ok = json::parse(R"({"field":{"kind":"prime","p":3},"n":2,"basis":[[[1,0],[0,1]]]})");
  CHECK(subspace_from_json(ok).dim() == 1);
  try {
    subspace_from_json(ok, Field::prime(5));
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::field_mismatch);
  }
}

TEST_CASE("verdict json round trip") {
  const Field f = Field::prime(3);
  Witness w;
  w.matrix = Matrix::from_ints(f, {{1, 1}, {1, 0}});
  w.eigenvalue = f.from_int(2);
  w.vector = Vector::from_ints(f, {1, 2});
  w.subspace = VecSpace::span(f, 2, {Vector::from_ints(f, {1, 1})});
  const Verdict v = Verdict::fails(w, "because");
  const Verdict back = verdict_from_json(f, to_json(v));
  CHECK(back.status == Status::fails);
  CHECK(back.reason == "because");
  CHECK(*back.witness.matrix == *w.matrix);
  CHECK(*back.witness.eigenvalue == *w.eigenvalue);
  CHECK(*back.witness.vector == *w.vector);
  CHECK(*back.witness.subspace == *w.subspace);
  CHECK(to_json(Verdict::holds()).at("witness").is_null());
}

TEST_CASE("cli recover examples match golden reports") {
  Run a = run({"recover", "--field", "gf7", "--input", kGolden + "/sym3.json"});
  CHECK(a.code == kExitOk);
  CHECK(json::parse(a.out) == load(kGolden + "/sym3.recover.json"));
  check_round_trip(a.out);

  Run b = run({"recover", "--field", "gf3", "--input", kGolden + "/sym2_times_diag12inv.json"});
  CHECK(b.code == kExitFails);
  const json rb = json::parse(b.out);
  CHECK(rb == load(kGolden + "/sym2_times_diag12inv.recover.json"));
  CHECK(rb.at("outcome") == "square_class_failure");
  CHECK(rb.at("witness") == json::parse(R"({"n":2,"rows":[[0,2],[1,0]]})"));
  check_round_trip(b.out);
}

TEST_CASE("cli census example matches the golden body") {
  Run r = run({"census", "--n", "2", "--q", "2", "--d", "3", "--pred", "diag"});
  CHECK(r.code == kExitFails);
  json body = json::parse(r.out);
  CHECK(body.contains("runtime"));
  body.erase("runtime");
  CHECK(body == load(kGolden + "/census_2_2_3_diag.json"));
  CHECK(body.at("summary").get<std::string>().rfind("0 of 15", 0) == 0);
  check_round_trip(r.out);

  Run csv = run({"census", "--n", "2", "--q", "2", "--d", "3", "--pred", "diag", "--csv"});
  CHECK(csv.out == "predicates,count,total\ndiag,0,15\n");

  Run pos = run({"census", "--n", "2", "--q", "3", "--d", "1", "--pred", "ts,irr"});
  CHECK(pos.code == kExitOk);
  check_round_trip(pos.out);
}

TEST_CASE("cli census bodies do not depend on workers") {
  std::string first;
  for (const char* w : {"1", "4", "8"}) {
    Run r = run({"census", "--n", "2", "--q", "3", "--d", "2", "--workers", w});
    json j = json::parse(r.out);
    CHECK(j.at("runtime").at("workers") == std::stoi(w));
    j.erase("runtime");
    if (first.empty()) first = j.dump();
    CHECK(j.dump() == first);
  }
}

TEST_CASE("cli analyze, max-diag and classify") {
  Run a = run({"analyze", "--input", kGolden + "/sym2_times_diag12inv.json"});
  CHECK(a.code == kExitFails);
  const json ja = json::parse(a.out);
  CHECK(ja.at("dim") == 3);
  CHECK(ja.at("orth").at("dim") == 1);
  CHECK(ja.at("verdicts").at("all_diagonalizable").at("status") == "Fails");
  CHECK(ja.at("verdicts").at("all_diagonalizable").at("reverified") == true);
  check_round_trip(a.out);

  const std::string scalar = temp_file("scalar_q.json", R"({"field":{"kind":"rational"},"n":2,"basis":[{"n":2,"rows":[[1,0],[0,1]]},{"n":2,"rows":[[0,1],[1,0]]}]})");
  Run q = run({"analyze", "--input", scalar, "--seed", "7"});
  CHECK(q.code == kExitFails);
  CHECK(json::parse(q.out).at("options").at("seed") == 7);
  CHECK(json::parse(q.out).at("verdicts").at("irreducible").at("status") == "Fails");
  check_round_trip(q.out);

  Run m = run({"census", "--n", "2", "--q", "2", "--max-diag"});
  CHECK(m.code == kExitOk);
  CHECK(json::parse(m.out).at("d_max") == 2);
  check_round_trip(m.out);

  Run c = run({"census", "--n", "2", "--q", "3", "--classify"});
  CHECK(c.code == kExitOk);
  CHECK(json::parse(c.out).at("all_expressible") == true);
  check_round_trip(c.out);
}

TEST_CASE("cli rational recovery round trips") {
  const std::string path = temp_file("sym2_q.json", R"({"field":"rational","n":2,"basis":[[[1,0],[0,0]],[[0,0],[0,1]],[["1/2",0],[0,0]],[[0,1],[1,0]]]})");
  Run r = run({"recover", "--input", path});
  CHECK(r.code == kExitOk);
  CHECK(json::parse(r.out).at("outcome") == "conditional_success");
  check_round_trip(r.out);
}

TEST_CASE("cli uncertified normalization over Q exits 3") {
  const std::string path = temp_file("sym2_diag12_q.json", R"({"field":"rational","n":2,"basis":[[[1,0],[0,0]],[[0,0],[0,"1/2"]],[[0,"1/2"],[1,0]]]})");
  Run r = run({"recover", "--input", path});
  CHECK(r.code == kExitUnknown);
  const json j = json::parse(r.out);
  CHECK(j.at("outcome") == "normalization_uncertified");
  CHECK(j.at("witness") == json::parse(R"({"n":2,"rows":[["0/1","1/2"],["1/1","0/1"]]})"));
  check_round_trip(r.out);
}

TEST_CASE("cli exit codes for errors") {
  const std::string sym3 = kGolden + "/sym3.json";
  CHECK(run({"recover", "--field", "gf5", "--input", sym3}).code == kExitInput);
  CHECK(run({"recover", "--input", sym3, "--bogus"}).code == kExitInput);
  CHECK(run({"recover"}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({"recover", "--input", "/nonexistent/file.json"}).code == kExitInput);
  CHECK(run({"recover", "--input", temp_file("garbage.json", "{not json")}).code == kExitInput);
  CHECK(run({"recover", "--field", "gf8", "--input", sym3}).code == kExitInput);
  CHECK(run({"census", "--n", "2", "--q", "7", "--d", "1"}).code == kExitInput);
  CHECK(run({"census", "--n", "2", "--q", "2", "--d", "1", "--pred", "nope"}).code == kExitInput);
  CHECK(run({"census", "--n", "3", "--q", "2", "--d", "6"}).code == kExitLimit);
  CHECK(run({"census", "--n", "2", "--q", "3", "--d", "2", "--cap", "10"}).code == kExitLimit);
  CHECK(run({"analyze", "--input", temp_file("full3.json", R"({"field":{"kind":"prime","p":2},"n":3,"basis":[[[1,0,0],[0,1,0],[0,0,1]]]})"), "--budget", "1"}).code == kExitLimit);
  CHECK(run({"verify", "--input", sym3}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("verify rejects tampered reports") {
  json r = load(kGolden + "/sym3.recover.json");
  json& s = r.at("S").at("rows");
  s[0][1] = (s[0][1].get<int>() + 1) % 7;
  Run v = run({"verify", "--input", temp_file("tampered.json", r.dump())});
  CHECK(v.code == kExitFails);
  CHECK(json::parse(v.out).at("ok") == false);

  json c = load(kGolden + "/census_2_2_3_diag.json");
  c.at("counts").at("diag") = 1;
  CHECK(run({"verify", "--input", temp_file("tampered_census.json", c.dump())}).code == kExitFails);

  json w = load(kGolden + "/sym2_times_diag12inv.recover.json");
  w.at("witness").at("rows") = json::parse("[[1,0],[0,1]]");
  CHECK(run({"verify", "--input", temp_file("tampered_witness.json", w.dump())}).code == kExitFails);
}
