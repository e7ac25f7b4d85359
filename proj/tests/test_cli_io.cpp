#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "igr/config.hpp"
#include "igr/snapshot.hpp"
#include "igr/timestep.hpp"

using namespace igr;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "igrlab_test_io";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty config yields the reference-experiment defaults") {
  const Config cfg = Config::parse("");
  CHECK(cfg.model == ModelKind::Igr);
  CHECK(cfg.n_cells == 512);
  CHECK(cfg.gamma == 1.4);
  CHECK(cfg.alpha_coefficient == 5.0);
  CHECK(cfg.cfl == 0.95);
  CHECK(cfg.t_end == 0.5);
  CHECK(cfg.output_times == std::vector<double>{0.125, 0.25, 0.375, 0.5});
  CHECK(cfg.x1 == 0.25);
  CHECK(cfg.x2 == 0.75);
  CHECK(cfg.delta == 0.02);
  CHECK(cfg.c_penalty == 20.0);
  CHECK(cfg.flux_dissipation_scale == 1.0);
  CHECK(cfg.alpha() == doctest::Approx(5.0 / (512.0 * 512.0)));
}

TEST_CASE("config parsing") {
  const Config cfg = Config::parse("# comment\nalpha_coefficient = 5\nn_cells = 512\n");
  CHECK(cfg.alpha() == doctest::Approx(5.0 / (512.0 * 512.0)));

  const Config low = Config::parse("model = HIGR\nn_cells = 250\n");
  CHECK(low.model == ModelKind::Higr);
  CHECK(low.n_cells == 250);

  CHECK_THROWS_WITH_AS(Config::parse("nonsense = 1\n"),
                       doctest::Contains("unknown key 'nonsense'"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Config::parse("\n\nn_cells = twelve\n"), doctest::Contains("line 3"),
                       std::invalid_argument);
  CHECK_THROWS_AS(Config::parse("model = Sod\n"), std::invalid_argument);
  CHECK_THROWS_AS(Config::parse("n_cells = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(Config::parse("cfl = 1.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(Config::parse("x1 = 0.74\n"), std::invalid_argument);  // ramps overlap
}

TEST_CASE("config echo lists every effective key exactly once") {
  const std::string base = Config::parse("").echo();
  const std::string changed = Config::parse("cfl = 0.5\n").echo();
  std::istringstream a(base), b(changed);
  std::string la, lb;
  int differing = 0;
  while (std::getline(a, la) && std::getline(b, lb))
    if (la != lb) {
      ++differing;
      CHECK(lb == "cfl = 0.5");
    }
  CHECK(differing == 1);
  for (const char* key : {"model", "n_cells", "gamma", "alpha_coefficient", "cfl", "t_end",
                          "output_times", "x1", "x2", "delta", "c_penalty",
                          "flux_dissipation_scale", "seed"})
    CHECK(base.find(std::string(key) + " = ") != std::string::npos);
}

TEST_CASE("snapshot write/read round trip") {
  const fs::path dir = temp_dir();
  const Mesh1D mesh(32);
  const Model model(mesh, ModelParams::defaults(ModelKind::Igr, 5.0 * mesh.h * mesh.h));
  const SimState state = state_from_primitives(
      model, [](double x) { return 1.0 + 0.25 * std::sin(6.28318530717958648 * x); },
      [](double x) { return 0.1 * std::cos(6.28318530717958648 * x); },
      [](double) { return 1.0; });

  const fs::path path = dir / "snap.csv";
  write_snapshot(model, state, path, "n_cells = 32\n");
  const SnapshotData data = read_snapshot(path);
  REQUIRE(data.rows() == 32);

  // Cell-center values reproduce bitwise through the 17-digit text format.
  const Primitives prim = model.recover_primitives(state);
  for (int c = 0; c < 32; ++c) {
    CHECK(data.x[c] == mesh.cell_center(c));
    CHECK(data.rho[c] == state.rho.value(c, 0.0));
    CHECK(data.u[c] == state.mom.value(c, 0.0) / state.rho.value(c, 0.0));
    CHECK(data.energy[c] == state.energy.value(c, 0.0));
  }

  // Sidecar metadata carries the echo and the totals.
  std::ifstream meta(path.string() + ".meta");
  std::stringstream meta_text;
  meta_text << meta.rdbuf();
  CHECK(meta_text.str().find("version = ") != std::string::npos);
  CHECK(meta_text.str().find("total_mass = ") != std::string::npos);
  CHECK(meta_text.str().find("n_cells = 32") != std::string::npos);
}

TEST_CASE("snapshot of a constant state has identical rows") {
  const fs::path dir = temp_dir();
  const Mesh1D mesh(16);
  const Model model(mesh, ModelParams::defaults(ModelKind::Euler, 0.0));
  const SimState state = state_from_primitives(
      model, [](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 1.0; });
  const fs::path path = dir / "const.csv";
  write_snapshot(model, state, path);
  const SnapshotData data = read_snapshot(path);
  for (std::size_t i = 1; i < data.rows(); ++i) {
    CHECK(data.rho[i] == data.rho[0]);
    CHECK(data.u[i] == data.u[0]);
    CHECK(data.energy[i] == data.energy[0]);
    CHECK(data.eps[i] == data.eps[0]);
  }
}

TEST_CASE("compare_csv") {
  const fs::path dir = temp_dir();
  const Mesh1D mesh(64);
  const Model model(mesh, ModelParams::defaults(ModelKind::Euler, 0.0));
  const SimState state = state_from_primitives(
      model, [](double x) { return 1.0 + 0.5 * std::sin(6.28318530717958648 * x); },
      [](double) { return 0.0; }, [](double) { return 1.0; });
  const fs::path a = dir / "a.csv";
  write_snapshot(model, state, a);

  // Identical files: all norms zero.
  for (const auto& n : compare_csv(a, a)) {
    CHECK(n.l1 == 0.0);
    CHECK(n.l2 == 0.0);
    CHECK(n.linf == 0.0);
  }

  // Shifted-by-one-cell copy: Linf(rho) equals the max cell-to-cell jump.
  const SnapshotData data = read_snapshot(a);
  const fs::path b = dir / "b.csv";
  {
    std::ofstream out(b);
    out << "x,rho,u,E,eps\n";
    char buf[200];
    const std::size_t n = data.rows();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", data.x[i], data.rho[j],
                    data.u[j], data.energy[j], data.eps[j]);
      out << buf;
    }
  }
  double max_jump = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i)
    max_jump = std::max(max_jump,
                        std::abs(data.rho[(i + 1) % data.rows()] - data.rho[i]));
  const auto norms = compare_csv(a, b);
  CHECK(norms[0].column == "rho");
  CHECK(norms[0].linf == doctest::Approx(max_jump).epsilon(1e-14));

  // Mismatched grids are an error.
  const Mesh1D other(32);
  const Model om(other, ModelParams::defaults(ModelKind::Euler, 0.0));
  const fs::path c = dir / "c.csv";
  write_snapshot(om, state_from_primitives(
                         om, [](double) { return 1.0; }, [](double) { return 0.0; },
                         [](double) { return 1.0; }),
                 c);
  CHECK_THROWS(compare_csv(a, c));
}
