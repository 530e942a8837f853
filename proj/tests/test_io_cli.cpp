#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "potentia/cli.hpp"
#include "potentia/io.hpp"
#include "potentia/parallel.hpp"
#include "potentia/report.hpp"

using namespace potentia;
namespace fs = std::filesystem;

namespace {

const fs::path kData{POTENTIA_TEST_DATA};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("potentia_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("operator files round-trip") {
  const auto op = io::load_operator(kData / "grad2.json");
  CHECK(op == catalog::gradient(2));
  CHECK(io::operator_from_json(io::operator_to_json(op)) == op);
  CHECK(io::load_operator(kData / "laplace2.json") == catalog::laplacian(2));
  CHECK_THROWS_AS(io::load_operator(kData / "bad_op.json"), InputError);
  CHECK_THROWS_AS(io::load_operator(kData / "missing.json"), InputError);
}

TEST_CASE("grid specs") {
  const Grid g = io::parse_grid("n=64,L=2.5");
  CHECK(g.dim() == 2);
  CHECK(g.n() == 64);
  CHECK(g.half_width() == 2.5);
  CHECK(io::parse_grid("n=32,L=1,N=3").dim() == 3);
  CHECK_THROWS_AS(io::parse_grid("n=32"), InputError);
  CHECK_THROWS_AS(io::parse_grid("n=8x,L=1"), InputError);
  CHECK_THROWS_AS(io::parse_grid("k=8,L=1"), InputError);
}

TEST_CASE("weights from shorthand and files") {
  const Weight w = io::parse_weight("power:-0.5", 2);
  REQUIRE(w.is_power());
  CHECK(w.as_power().alpha == -0.5);
  CHECK_THROWS_AS(io::parse_weight("power:abc", 2), InputError);
  const Weight gw = io::parse_weight((kData / "w_grid.json").string(), 2);
  REQUIRE_FALSE(gw.is_power());
  CHECK(gw.as_grid().values.size() == 1024);
  CHECK(gw.as_grid().values[3] == doctest::Approx(1.0 + 3.0 / 16.0));
}

TEST_CASE("measures from files") {
  const auto mu = io::load_measure(kData / "dipole.json");
  REQUIRE(mu.is_atomic());
  CHECK(mu.as_atomic().points.size() == 2);
  CHECK(std::abs(mu.total()[0]) < 1e-15);
  CHECK(io::measure_from_json(io::measure_to_json(mu), kData).as_atomic().points == mu.as_atomic().points);

  const fs::path dir = scratch("density");
  const Grid g(2, 1.0, 32);
  {
    std::ofstream os(dir / "d.csv");
    for (std::size_t i = 0; i < g.size(); ++i) os << i << "," << -double(i) << "\n";
  }
  {
    std::ofstream os(dir / "d.json");
    os << R"({"kind": "density", "grid": {"dim": 2, "n": 32, "L": 1}, "values_path": "d.csv"})";
  }
  const auto d = io::load_measure(dir / "d.json");
  REQUIRE_FALSE(d.is_atomic());
  CHECK(d.as_density().density.at(5, 0) == Complex{5.0, -5.0});
}

TEST_CASE("field snapshots round-trip bit for bit") {
  const Grid g(2, 1.5, 32);
  Field f(g, 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.at(i, 0) = {0.1 * double(i), -1.0 / (1.0 + i)};
    f.at(i, 1) = {std::sqrt(double(i)), 0.0};
  }
  const fs::path dir = scratch("field");
  io::write_field(dir / "f.potf", f);
  const Field back = io::read_field(dir / "f.potf");
  CHECK(back.grid() == g);
  CHECK(back.components() == 2);
  CHECK(back.data() == f.data());
  io::write_field_csv(dir / "f.csv", f);
  std::ifstream in(dir / "f.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,re0,im0,re1,im1");
  {
    std::ofstream os(dir / "junk.potf");
    os << "not a field";
  }
  CHECK_THROWS_AS(io::read_field(dir / "junk.potf"), InputError);
}

TEST_CASE("report envelope and number handling") {
  auto r = report::envelope("verify", 3, std::nullopt);
  CHECK(r["schema_version"] == std::string(kSchemaVersion));
  CHECK(r["tool_version"] == std::string(kToolVersion));
  CHECK(r["results"].empty());
  report::add_condition(r, "x");
  report::add_condition(r, "x");
  CHECK(r["conditions"].size() == 1);
  CHECK(report::number(std::numeric_limits<double>::infinity()).is_null());
  CHECK(report::csv_number(0.1) == "0.1");
  const std::string text = report::serialize(r);
  CHECK(text.back() == '\n');
  CHECK(text == report::serialize(report::json::parse(text)));
}

TEST_CASE("an empty result set gives a valid report file") {
  const fs::path dir = fs::path(POTENTIA_REPORT_DIR) / "empty";
  const auto r = report::envelope("verify", 0, std::nullopt);
  report::write_text(dir / "verify.json", report::serialize(r));
  CHECK(fs::file_size(dir / "verify.json") > 0);
  CHECK(report::json::parse(std::ifstream(dir / "verify.json"))["results"].empty());
}

TEST_CASE("cli exit codes") {
  cli::RunConfig ok;
  ok.command = "check-operator";
  ok.op = kData / "grad2.json";
  const auto a = cli::run(ok);
  CHECK(a.exit_code == cli::kExitOk);
  CHECK(a.report.find("\"canceling\": true") != std::string::npos);

  cli::RunConfig div = ok;
  div.op = kData / "div2.json";
  CHECK(cli::run(div).exit_code == cli::kExitCheckFailed);

  cli::RunConfig missing = ok;
  missing.op = kData / "nope.json";
  const auto m = cli::run(missing);
  CHECK(m.exit_code == cli::kExitInputError);
  CHECK_FALSE(m.diagnostic.empty());

  cli::RunConfig cond;
  cond.command = "check-conditions";
  cond.measure = kData / "atom.json";
  cond.weight = "power:-0.5";
  cond.ell = 1.0;
  cond.q = 1.0;
  const auto c = cli::run(cond);
  CHECK(c.exit_code == cli::kExitOk);
  const auto j = report::json::parse(c.report);
  for (const char* k : {"testing_far", "testing_near", "wolff", "decay_origin"}) CHECK(j["results"].contains(k));

  cli::RunConfig bad;
  bad.command = "frobnicate";
  CHECK(cli::run(bad).exit_code == cli::kExitInputError);
}

TEST_CASE("cli argument parsing") {
  const char* argv[] = {"potentia", "check-conditions", "--measure", "m.json", "--weight", "power:0.5",
                        "--ell", "1", "--q", "2", "--seed", "17", "--out", "dir"};
  const auto c = cli::parse_arguments(14, argv);
  CHECK(c.command == "check-conditions");
  CHECK(c.measure->string() == "m.json");
  CHECK(*c.weight == "power:0.5");
  CHECK(*c.q == 2.0);
  CHECK(c.seed == 17);
  CHECK(c.out->string() == "dir");
  const char* bad[] = {"potentia", "solve", "--bogus"};
  CHECK_THROWS_AS(cli::parse_arguments(3, bad), InputError);
  std::ostringstream out, err;
  const char* none[] = {"potentia"};
  CHECK(cli::main_entry(1, none, out, err) == cli::kExitInputError);
}

TEST_CASE("cli writes files and reports are thread-count independent") {
  const fs::path dir = scratch("estimate");
  cli::RunConfig c;
  c.command = "estimate-constant";
  c.kind = "apriori_L1";
  c.grid = "n=64,L=4";
  c.budget = 40;
  c.seed = 4;
  c.out = dir;
  set_thread_count(1);
  const auto a = cli::run(c);
  set_thread_count(3);
  const auto b = cli::run(c);
  set_thread_count(0);
  CHECK(a.exit_code == cli::kExitOk);
  CHECK(a.report == b.report);
  CHECK(fs::exists(dir / "estimate-constant.json"));
  CHECK(fs::exists(dir / "ratio_history.csv"));

  cli::RunConfig unwritable = c;
  unwritable.out = "/proc/potentia_cannot_write";
  CHECK(cli::run(unwritable).exit_code == cli::kExitInputError);
}

TEST_CASE("config files fill unset fields") {
  cli::RunConfig c;
  c.command = "estimate-constant";
  c.config = kData / "estimate.json";
  const auto r = cli::run(c);
  REQUIRE(r.exit_code == cli::kExitOk);
  const auto j = report::json::parse(r.report);
  CHECK(j["seed"] == 7);
  CHECK(j["samples"]["budget"] == 48);
}
