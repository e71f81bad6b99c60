// fmk: batch front end for functional-map matching, evaluation and
// structural diagnostics.
//
// Exit codes: 0 success, 2 usage error, 3 data error.

#include "fmk/diagnostics.hpp"
#include "fmk/errors.hpp"
#include "fmk/eval.hpp"
#include "fmk/fixtures.hpp"
#include "fmk/io.hpp"
#include "fmk/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to `path`, or to stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    fmk::write_text_file(path, text);
}

struct CommonFlags {
  std::string src, dst;
  int k = fmk::kDefaultBasisSize;
  std::string desc = "stack";
  int smooth_j = fmk::kDefaultSmoothBasisSize;
  double smooth_t = 0.0;
  std::string landmarks;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--src", f.src, "source mesh (OFF/OBJ/PLY)")->required();
  cmd->add_option("--dst", f.dst, "target mesh (OFF/OBJ/PLY)")->required();
  cmd->add_option("--k", f.k, "functional map size")->capture_default_str();
  cmd->add_option("--desc", f.desc, "descriptor: xyz, hks, wks or stack")
      ->check(CLI::IsMember({"xyz", "hks", "wks", "stack"}))
      ->capture_default_str();
  cmd->add_option("--smooth-j", f.smooth_j, "smoothing basis size (0 disables smoothing)")->capture_default_str();
  cmd->add_option("--smooth-t", f.smooth_t, "smoothing diffusion time (0 = projection)")->capture_default_str();
  cmd->add_option("--landmarks", f.landmarks, "landmark pairs file, one 'i j' per line");
  cmd->add_option("--seed", f.seed, "seed for randomized steps")->capture_default_str();
}

fmk::MatchOptions to_options(const CommonFlags& f) {
  fmk::MatchOptions o;
  o.k = f.k;
  o.descriptor = *fmk::parse_descriptor_kind(f.desc);
  o.smooth_j = f.smooth_j;
  o.smooth_t = f.smooth_t;
  if (f.smooth_t < 0.0) throw UsageError("--smooth-t must be >= 0");
  if (!f.landmarks.empty()) o.landmarks = fmk::parse_landmark_pairs(fmk::read_text_file(f.landmarks));
  return o;
}

// --k is validated against the meshes here so the failure is a usage error.
void check_k(int k, const fmk::TriMesh& a, const fmk::TriMesh& b) {
  const int n = std::min(a.num_vertices(), b.num_vertices());
  if (k < 1 || k > n)
    throw UsageError("--k " + std::to_string(k) + " is out of range: the meshes have " +
                     std::to_string(a.num_vertices()) + " and " + std::to_string(b.num_vertices()) +
                     " vertices, so k must lie in [1, " + std::to_string(n) + "]");
}

struct MatchFlags {
  CommonFlags common;
  double mu = fmk::kDefaultMu;
  std::string refine = "none";
  int refine_iters = 10;
  double tau = fmk::kDefaultTau;
  std::string convert = "adjoint";
  std::string out, report, trace, fmap_out;
};

int cmd_match(const MatchFlags& f) {
  fmk::MatchOptions o = to_options(f.common);
  if (f.mu < 0.0) throw UsageError("--mu must be >= 0");
  if (!(f.tau > 0.0)) throw UsageError("--tau must be positive");
  if (f.refine_iters < 1) throw UsageError("--refine-iters must be >= 1");
  o.mu = f.mu;
  o.refine = *fmk::parse_refine_kind(f.refine);
  o.refine_iters = f.refine_iters;
  o.tau = f.tau;
  o.convert = *fmk::parse_convert_kind(f.convert);

  const fmk::TriMesh src = fmk::load_mesh(f.common.src);
  const fmk::TriMesh dst = fmk::load_mesh(f.common.dst);
  check_k(o.k, src, dst);
  const fmk::MatchResult r = fmk::run_match(src, dst, o);

  fmk::write_text_file(f.out, fmk::format_correspondence(r.map.targets));
  emit(f.report, fmk::to_key_value(r.report));
  if (!f.trace.empty()) fmk::write_text_file(f.trace, fmk::format_trace_csv(r.refine_trace, "residual"));
  if (!f.fmap_out.empty()) fmk::write_text_file(f.fmap_out, fmk::format_fmap(r.C));
  return 0;
}

struct EvalFlags {
  std::string pred, gt, mesh, out;
  std::uint64_t seed = 0;
};

int cmd_eval(const EvalFlags& f) {
  const auto pred = fmk::parse_correspondence(fmk::read_text_file(f.pred));
  const auto gt = fmk::parse_correspondence(fmk::read_text_file(f.gt));
  const fmk::TriMesh mesh = fmk::load_mesh(f.mesh);
  const fmk::GeodesicError err = fmk::geodesic_error(pred, gt, mesh);
  if (!f.out.empty()) fmk::write_text_file(f.out, fmk::format_error_report(err));
  std::cout << fmk::format_mean_line(err.mean) << "\n";
  return 0;
}

struct DiagnoseFlags {
  CommonFlags common;
  double noise = 0.0;
  int maps = 10;
  std::string report;
};

int cmd_diagnose(const DiagnoseFlags& f) {
  const fmk::MatchOptions o = to_options(f.common);
  if (f.noise < 0.0) throw UsageError("--noise must be >= 0");
  if (f.maps < 0) throw UsageError("--maps must be >= 0");
  const fmk::TriMesh src = fmk::load_mesh(f.common.src);
  const fmk::TriMesh dst = fmk::load_mesh(f.common.dst);
  check_k(o.k, src, dst);
  fmk::FeaturePair fp = fmk::prepare_features(src, dst, o);
  if (f.noise > 0.0) fp.F2 = fmk::inject_out_of_span(fp.F2, fp.basis2, f.noise, f.common.seed);

  fmk::OracleOptions oo;
  oo.random_maps = f.maps;
  oo.seed = f.common.seed;
  const fmk::OracleVerdict v = fmk::theorem_oracle(fp.F1, fp.F2, fp.basis1, fp.basis2, oo);
  const fmk::StructureReport sr = fmk::structure_report(v.C_opt, fp.F1, fp.F2, fp.basis1, fp.basis2);
  emit(f.report, fmk::to_key_value(sr) + fmk::to_key_value(v, oo));
  return 0;
}

struct FixtureFlags {
  std::string src, dst, gt;
  int level = 3;
  double jitter = 0.02;
  std::uint64_t seed = 7;
};

int cmd_fixture(const FixtureFlags& f) {
  if (f.level < 0 || f.level > 6) throw UsageError("--level must lie in [0, 6]");
  if (f.jitter < 0.0 || f.jitter >= 0.5) throw UsageError("--jitter must lie in [0, 0.5)");
  fmk::TriMesh base = fmk::fixtures::icosphere(f.level);
  if (f.jitter > 0.0) base = fmk::fixtures::jitter_radially(base, f.jitter, f.seed);
  base = fmk::fixtures::scaled(base, 1.0 / std::sqrt(base.total_area()));
  const fmk::fixtures::PermutedPair pair = fmk::fixtures::permuted_copy(base, f.seed + 1);
  fmk::save_off(pair.source, f.src);
  fmk::save_off(pair.target, f.dst);
  fmk::write_text_file(f.gt, fmk::format_correspondence(pair.target_to_source));
  return 0;
}

int data_error(const std::string& msg) {
  std::cerr << "fmk: error: " << msg << "\n";
  return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional-map shape matching toolkit"};
  app.require_subcommand(1);

  MatchFlags mf;
  CLI::App* match = app.add_subcommand("match", "compute a pointwise map from --dst to --src");
  add_common(match, mf.common);
  match->add_option("--mu", mf.mu, "Laplacian commutativity weight")->capture_default_str();
  match->add_option("--refine", mf.refine, "none, proper-adjoint or proper-feature")
      ->check(CLI::IsMember({"none", "proper-adjoint", "proper-feature"}))
      ->capture_default_str();
  match->add_option("--refine-iters", mf.refine_iters, "refinement rounds")->capture_default_str();
  match->add_option("--tau", mf.tau, "soft-map temperature")->capture_default_str();
  match->add_option("--convert", mf.convert, "adjoint or nn")
      ->check(CLI::IsMember({"adjoint", "nn"}))
      ->capture_default_str();
  match->add_option("--out", mf.out, "output map: line i holds the source vertex for target vertex i")->required();
  match->add_option("--report", mf.report, "structure report (default: stdout)");
  match->add_option("--trace", mf.trace, "refinement residual trace CSV");
  match->add_option("--fmap-out", mf.fmap_out, "write the functional map C");

  EvalFlags ef;
  CLI::App* eval = app.add_subcommand("eval", "geodesic error of a map against ground truth");
  eval->add_option("--pred", ef.pred, "predicted map file")->required();
  eval->add_option("--gt", ef.gt, "ground-truth map file")->required();
  eval->add_option("--mesh", ef.mesh, "mesh on which errors are measured")->required();
  eval->add_option("--out", ef.out, "per-vertex CSV report");
  eval->add_option("--seed", ef.seed, "unused; accepted for uniformity")->capture_default_str();

  DiagnoseFlags df;
  CLI::App* diagnose = app.add_subcommand("diagnose", "structural report and map-recovery oracle");
  add_common(diagnose, df.common);
  diagnose->add_option("--noise", df.noise, "out-of-span noise ratio injected into target features")
      ->capture_default_str();
  diagnose->add_option("--maps", df.maps, "random maps for the energy decomposition check")->capture_default_str();
  diagnose->add_option("--report", df.report, "report file (default: stdout)");

  FixtureFlags ff;
  CLI::App* fixture = app.add_subcommand("fixture", "write a jittered icosphere and a vertex-permuted copy");
  fixture->add_option("--src", ff.src, "output source mesh (OFF)")->required();
  fixture->add_option("--dst", ff.dst, "output permuted mesh (OFF)")->required();
  fixture->add_option("--gt", ff.gt, "output ground-truth map")->required();
  fixture->add_option("--level", ff.level, "icosphere subdivision level")->capture_default_str();
  fixture->add_option("--jitter", ff.jitter, "relative radial jitter")->capture_default_str();
  fixture->add_option("--seed", ff.seed, "jitter and permutation seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (match->parsed()) return cmd_match(mf);
    if (eval->parsed()) return cmd_eval(ef);
    if (diagnose->parsed()) return cmd_diagnose(df);
    if (fixture->parsed()) return cmd_fixture(ff);
  } catch (const UsageError& e) {
    std::cerr << "fmk: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fmk::Error& e) {
    if (e.kind() == fmk::ErrorKind::InvalidK) {
      std::cerr << "fmk: usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    return data_error(e.what());
  } catch (const std::exception& e) {
    return data_error(e.what());
  }
  return kExitUsage;
}
