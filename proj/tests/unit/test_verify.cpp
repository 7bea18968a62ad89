#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "esdl/verify/cache.hpp"
#include "esdl/verify/checks.hpp"

using namespace esdl;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("esdl_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string message_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

RunConfig small_config(int p, double lambda) {
  RunConfig c;
  c.p = p;
  c.lambda = lambda;
  c.px_w = c.px_h = 128;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("config text") {
  const RunConfig c = parse_config_text(
      "# sample\n"
      "p = 6\n"
      "lambda = -0.5   # trailing comment\n"
      "\n"
      "viewport = -4,4,-2,2\n"
      "resolution = 300x100\n"
      "budget = 30\n"
      "escape_radius = 3\n");
  CHECK(c.p == 6);
  CHECK(c.lambda == -0.5);
  CHECK(c.viewport.x0 == -4);
  CHECK(c.viewport.y1 == 2);
  CHECK(c.px_w == 300);
  CHECK(c.px_h == 100);
  CHECK(c.budget == 30);
  CHECK(c.escape_radius() == 3.0);
  CHECK(parse_config_text("resolution = 64\n").px_h == 64);
}

TEST_CASE("config errors name the constraint or the line") {
  CHECK(message_of("p = 2\n").find("p ≥ 3") != std::string::npos);
  CHECK(message_of("lambda = 0\n").find("λ ∈ ℝ*") != std::string::npos);
  CHECK(message_of("p = 4\ncolour = red\n").find("line 2") != std::string::npos);
  CHECK(message_of("p = four\n").find("line 1") != std::string::npos);
  CHECK(message_of("p 4\n").find("line 1") != std::string::npos);
  CHECK(message_of("budget = 0\n") != "");
  CHECK(message_of("nu = -1\n").find("nu > 0") != std::string::npos);
  CHECK(message_of("q = 0.1\n").find("q ≥") != std::string::npos);
  try {
    parse_config_text("\n\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_config_file("/nonexistent/esdl.conf"), ConfigError);
}

TEST_CASE("cache directory from the environment wins") {
  RunConfig c;
  c.cache_dir = "/from/config";
  ::unsetenv("ESDL_CACHE_DIR");
  CHECK(c.effective_cache_dir() == "/from/config");
  ::setenv("ESDL_CACHE_DIR", "/from/env", 1);
  CHECK(c.effective_cache_dir() == "/from/env");
  ::setenv("ESDL_CACHE_DIR", "", 1);
  CHECK(c.effective_cache_dir() == "/from/config");
  ::unsetenv("ESDL_CACHE_DIR");
}

TEST_CASE("reports round trip through JSON") {
  VerificationReport r;
  r.check_id = "SERIES";
  r.p = 5;
  r.lambda = -0.3;
  r.bounded("max_rel_err", 1.25e-13, BoundKind::AtMost, 1e-8);
  r.bounded("margin", 0.5, BoundKind::Above, 0.0);
  r.metric("samples", 1000);
  r.note("first");
  r.note("second");
  r.decide();
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.notes == "first; second");
  const VerificationReport back = report_from_json(to_json(r));
  CHECK(back.check_id == r.check_id);
  CHECK(back.p == r.p);
  CHECK(back.lambda == r.lambda);
  CHECK(back.status == r.status);
  CHECK(back.metrics == r.metrics);
  CHECK(back.notes == r.notes);
  REQUIRE(back.bounds.size() == 2);
  CHECK(back.bounds.at("margin").kind == BoundKind::Above);
  CHECK(back.bounds.at("max_rel_err").value == 1e-8);
  CHECK(to_json(back) == to_json(r));
  CHECK(to_json(r).find("\"bound.max_rel_err\": \"<= 1e-08\"") != std::string::npos);
  CHECK(to_csv({r}).find("SERIES,PASS,max_rel_err,") != std::string::npos);
}

TEST_CASE("bounds and decisions") {
  CHECK(Bound{BoundKind::AtMost, 1.0}.holds(1.0));
  CHECK_FALSE(Bound{BoundKind::Below, 1.0}.holds(1.0));
  CHECK(Bound{BoundKind::AtLeast, 2.0}.holds(2.0));
  CHECK_FALSE(Bound{BoundKind::Above, 2.0}.holds(2.0));
  CHECK_FALSE(Bound{BoundKind::AtMost, 1.0}.holds(std::nan("")));
  VerificationReport r;
  r.bounded("x", 3.0, BoundKind::AtMost, 1.0);
  r.decide();
  CHECK(r.status == CheckStatus::Fail);
  VerificationReport forced;
  forced.bounded("x", 0.0, BoundKind::AtMost, 1.0);
  forced.decide(true);
  CHECK(forced.status == CheckStatus::Fail);
  CHECK(exit_code({r}) != 0);
  CHECK(exit_code({}) == 0);
}

TEST_CASE("singular tables reload exactly") {
  const FamilyParams params(4, 1.0);
  const SingularData data = singular_data(params, 40.0);
  const SingularData back = singular_from_csv(singular_to_csv(params, data));
  CHECK(back.zeros_t == data.zeros_t);
  CHECK(back.crit_t == data.crit_t);
  CHECK(back.crit_values == data.crit_values);
  CHECK(back.t_max == data.t_max);
  CHECK(back.max_imag_residual == data.max_imag_residual);
  CHECK_THROWS_AS(singular_from_csv("kind,t,z_re,z_im,f_value\nzero,abc,0,0,0\n"), std::runtime_error);
  CHECK(singular_cache_name(params, 40.0) == singular_cache_name(params, 40.0));
  CHECK(singular_cache_name(params, 40.0) != singular_cache_name(FamilyParams(4, 2.0), 40.0));
}

TEST_CASE("warm and cold cache runs agree") {
  const fs::path dir = scratch_dir("cache");
  ::setenv("ESDL_CACHE_DIR", dir.c_str(), 1);
  const RunConfig c = small_config(4, 1.0);
  const VerificationReport cold = run_check(c, "CVS-INTERLACE");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) >= 1);
  const VerificationReport warm = run_check(c, "CVS-INTERLACE");
  ::unsetenv("ESDL_CACHE_DIR");
  const VerificationReport none = run_check(c, "CVS-INTERLACE");
  CHECK(cold.status == CheckStatus::Pass);
  CHECK(warm.metrics == cold.metrics);
  CHECK(none.metrics == cold.metrics);
  fs::remove_all(dir);
}

TEST_CASE("dispatch follows the hypotheses") {
  CHECK(check_ids().size() == 14);
  CHECK(skip_reason(small_config(5, 1.0), "SYM-EVEN").has_value());
  CHECK(skip_reason(small_config(5, 1.0), "SR-MAP").has_value());
  CHECK(skip_reason(small_config(5, 1.0), "THM2-GROWTH").has_value());
  CHECK_FALSE(skip_reason(small_config(5, 1.0), "SERIES").has_value());
  CHECK(skip_reason(small_config(4, -1.0), "SR-MAP").has_value());
  CHECK(skip_reason(small_config(4, 0.25), "THM2-GROWTH").has_value());
  CHECK_FALSE(skip_reason(small_config(4, 0.25), "PROP-BASIN").has_value());
  CHECK(skip_reason(small_config(4, 1.0), "PROP-BASIN").has_value());
  CHECK_FALSE(skip_reason(small_config(6, 2.0), "THM2-GROWTH").has_value());

  // Run outside its hypotheses, the growth check measures a negative margin.
  const VerificationReport growth = run_check(small_config(4, 0.25), "THM2-GROWTH");
  CHECK(growth.status == CheckStatus::Fail);
  CHECK_FALSE(growth.notes.empty());

  CHECK_THROWS_AS(run_check(small_config(4, 1.0), "NO-SUCH-CHECK"), UnknownCheckError);
  CHECK_THROWS_AS(run_check(small_config(2, 1.0), "SERIES"), ConfigError);
}

TEST_CASE("odd p run skips the even-only checks and passes the rest") {
  RunConfig c = small_config(5, 1.0);
  for (const std::string id : {"SYM-OMEGA", "SERIES", "CVS-ZEROS", "CVS-REAL"}) {
    const VerificationReport r = run_check(c, id);
    CHECK_MESSAGE(r.status == CheckStatus::Pass, id);
  }
}

TEST_CASE("runs are idempotent and write one report per check") {
  const fs::path dir = scratch_dir("out");
  RunConfig c = small_config(4, 1.0);
  c.out_dir = dir.string();
  const VerificationReport first = run_check(c, "SERIES");
  std::ifstream in(dir / "SERIES.json");
  REQUIRE(in.good());
  std::stringstream text;
  text << in.rdbuf();
  CHECK(report_from_json(text.str()).metrics == first.metrics);
  const VerificationReport second = run_check(c, "SERIES");
  CHECK(to_json(second) == to_json(first));
  fs::remove_all(dir);
}
