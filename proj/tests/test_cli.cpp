#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace fermat;
using fermat::cli::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Complex complex_of(const Json& j) { return {j["re"].get<double>(), j["im"].get<double>()}; }

}  // namespace

TEST_CASE("context") {
  const Result r = run({"context"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  CHECK(j["e1"].get<double>() == doctest::Approx(0.6299605249474366).epsilon(1e-15));
  const Complex w1 = complex_of(j["omega1"]);
  const Complex w2 = complex_of(j["omega2"]);
  CHECK(std::abs(w2 / w1 - std::polar(1.0, kPi / 3.0)) < 1e-12);
  // theta1 and -theta2 coincide modulo the lattice.
  const Lattice lat(w1, w2);
  CHECK(distance_to_lattice(complex_of(j["theta1"]) + complex_of(j["theta2"]), lat) < 1e-8);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) {
    keys.push_back(item.key());
  }
  CHECK(keys == std::vector<std::string>{"omega1", "omega2", "theta1", "theta2", "e1"});
}

TEST_CASE("eval") {
  const Result finite = run({"eval", "wp", "--z", "0.5+0.5i"});
  REQUIRE(finite.code == 0);
  CHECK_FALSE(finite.json()["at_pole"].get<bool>());
  CHECK(finite.json()["im"].get<double>() == doctest::Approx(-1.99999693386985).epsilon(1e-12));

  const Result pole = run({"eval", "wp", "--z", "0"});
  REQUIRE(pole.code == 0);
  CHECK(pole.json()["at_pole"].get<bool>());

  const Json s = run({"eval", "sn", "--z", "0"}).json();
  CHECK(s["re"].get<double>() == 0.0);
  CHECK(s["im"].get<double>() == 0.0);
  CHECK_FALSE(s["at_pole"].get<bool>());
  CHECK(run({"eval", "sn-prime", "--z", "0"}).json()["re"].get<double>() == 1.0);
  CHECK(run({"eval", "wp-prime", "--z", "pi*i/7"}).code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"context", "--bogus"}).code == 2);
  CHECK(run({"eval", "cn", "--z", "1"}).code == 2);
  CHECK(run({"eval", "wp"}).code == 2);
  const Result bad = run({"eval", "wp", "--z", "(1/2)*(1 + x)"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("column 12") != std::string::npos);
  CHECK(run({"eval", "wp", "--z", "z"}).code == 2);
  CHECK(run({"verify", "cubic-pair"}).code == 2);
  CHECK(run({"--samples", "0", "context"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("construct") {
  const Result shift = run({"construct", "shift3", "--h", "exp(log(exp(pi*i/3))*z/3)*sin(2*pi*z/3)", "--c", "3", "--A",
                            "exp(pi*i/3)"});
  // The difference h(z+3) - A h(z) vanishes: condition (3) with tau = 0.
  REQUIRE(shift.code == 0);
  CHECK(shift.json()["certificate"]["shift"]["condition"].get<int>() == 3);

  const Result ex2 = run({"construct", "example2", "--periodic", "sin(2*pi*z/3)", "--c", "3", "--A", "exp(pi*i/3)",
                          "--theta-case", "1"});
  REQUIRE(ex2.code == 0);
  CHECK(ex2.json()["certificate"]["shift"]["condition"].get<int>() == 1);

  const Result invalid = run({"construct", "shift3", "--h", "z", "--c", "3", "--A", "exp(pi*i/4)"});
  CHECK(invalid.code == 3);
  CHECK(invalid.json()["error"]["kind"] == "parameter");

  const Result ex3 = run({"construct", "exp-family", "--n", "2", "--m", "4", "--A", "0.6", "--B", "0.64^0.25", "--c",
                          "1", "--g", "exp(log(0.5)*z) + 2*log(0.64^0.25/0.6)/0.5"});
  REQUIRE(ex3.code == 0);
  const Json j = ex3.json();
  CHECK(j["certificate"]["passed"].get<bool>());
  CHECK(j["certificate"]["relation"]["max_residual"].get<double>() < 1e-8);
  CHECK(j["side_condition_residuals"]["A^n + B^m - 1"].get<double>() < 1e-10);

  const Result q = run({"construct", "q-difference", "--n", "2", "--m", "4", "--A", "0.6", "--B", "0.64^0.25"});
  REQUIRE(q.code == 0);
  CHECK(q.json()["certificate"]["relation"]["q_modulus"].get<double>() == doctest::Approx(std::sqrt(0.5)));

  const Result open = run({"construct", "exp-family", "--n", "2", "--m", "2", "--A", "1", "--B", "1", "--g", "z"});
  CHECK(open.code == 3);
  CHECK(open.json()["status"] == "open");
}

TEST_CASE("verify") {
  const Result good = run({"--tol", "1e-8", "verify", "cubic-pair", "--h", "z"});
  CHECK(good.code == 0);
  const Json j = good.json();
  std::vector<std::string> keys;
  for (const auto& item : j.items()) {
    keys.push_back(item.key());
  }
  CHECK(keys == std::vector<std::string>{"samples_requested", "samples_used", "skipped_near_pole", "max_residual",
                                         "mean_residual", "worst_point", "seed", "tolerance", "passed"});
  CHECK(j["passed"].get<bool>());

  const Result wrong = run({"verify", "cubic-pair", "--h", "z", "--eta", "1.01", "--no-validate"});
  CHECK(wrong.code == 1);
  CHECK_FALSE(wrong.json()["passed"].get<bool>());
  CHECK(run({"verify", "cubic-pair", "--h", "z", "--eta", "1.01"}).code == 3);

  const Result ex1 = run({"verify", "example1", "--alpha", "2", "--beta", "0", "--tol", "1e-7", "--radius", "0.5"});
  CHECK(ex1.code == 0);
  CHECK(ex1.json()["passed"].get<bool>());

  CHECK(run({"verify", "scalar-exp", "--n", "3", "--alpha", "1", "--c", "log(2)", "--tol", "1e-10"}).code == 0);
  CHECK(run({"verify", "example4", "--n", "3", "--A", "0.5", "--B", "0.875^(1/3)", "--c", "3", "--periodic",
             "sin(2*pi*z/3)"})
            .code == 0);
}

TEST_CASE("residue and order") {
  const Json inv = run({"residue", "--fn", "inv-z", "--radius", "0.5"}).json();
  CHECK(std::abs(complex_of(inv["residue"]) - 1.0) < 1e-12);

  const Json lattice = run({"residue", "--fn", "wp-log-deriv", "--center", "0"}).json();
  CHECK(std::abs(complex_of(lattice["residue"]) + 2.0) < 1e-8);
  CHECK(lattice["radius_disagreement"].get<double>() < 1e-8);
  const Json zero = run({"residue", "--fn", "wp-log-deriv", "--center", "theta1"}).json();
  CHECK(std::abs(complex_of(zero["residue"]) - 1.0) < 1e-8);

  CHECK(run({"order", "--fn", "wp", "--center", "0"}).json()["order"].get<int>() == -2);
  CHECK(run({"order", "--fn", "wp", "--center", "theta2"}).json()["order"].get<int>() == 1);
  CHECK(run({"order", "--fn", "sn", "--center", "sn-pole"}).json()["order"].get<int>() == -1);
  CHECK(run({"residue", "--fn", "inv-z", "--radius", "0.5", "--center", "-0.5"}).code == 3);
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> args{"--seed", "77", "verify", "pair-2-4", "--h", "exp(z)", "--radius", "0.5"};
  const Result a = run(args);
  const Result b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::vector<std::string> other = args;
  other[1] = "78";
  CHECK(run(other).out != a.out);
}

TEST_CASE("output file") {
  const std::string path = "cli_test_output.json";
  std::remove(path.c_str());
  const Result r = run({"--out", path, "context"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == run({"context"}).out);
  std::remove(path.c_str());
  CHECK(run({"--out", "/nonexistent-dir/x.json", "context"}).code == 2);
}
