#include "serialization.hpp"
#include "vrspam/vrspam.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

using namespace vrspam;
using nlohmann::json;

namespace {

struct DataArgs {
  std::string data_path;
  std::string test_path;
  double split_fraction = 0.8;
  bool normalize = false;
};

struct SolverArgs {
  std::string algo = "vrspam";
  std::string reg = "l2";
  double beta = 1.0;
  double beta1 = 0.0;
  double eta = 0.0;
  double theta = 0.5;
  std::size_t inner_steps = 0;
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
  std::string warm_start = "zero";
  double spam_c = 0.0;
};

RegularizerSpec make_reg(const SolverArgs& a) {
  if (a.reg != "l2" && a.reg != "net") throw ConfigError("reg must be l2 or net");
  return {a.reg == "l2" ? RegKind::L2 : RegKind::ElasticNet, a.beta,
          a.reg == "l2" ? 0.0 : a.beta1};
}

SolverConfig make_solver_config(const SolverArgs& a) {
  SolverConfig cfg;
  cfg.eta = a.eta;
  cfg.theta = a.theta;
  cfg.inner_steps = a.inner_steps;
  cfg.epochs = a.epochs;
  cfg.seed = a.seed;
  if (a.warm_start == "zero")
    cfg.warm_start = WarmStart::Zero;
  else if (a.warm_start == "spam-one-pass")
    cfg.warm_start = WarmStart::SpamOnePass;
  else
    throw ConfigError("warm-start must be zero or spam-one-pass");
  cfg.spam_schedule_c = a.spam_c;
  return cfg;
}

Dataset load_single(const DataArgs& a) {
  Dataset data = binarize_labels(parse_libsvm_file(a.data_path));
  if (a.normalize) data = normalize(data);
  return data;
}

/// Train/test pair: either a separate test file (rescaled through the
/// training max norm when normalizing) or a seeded shuffle split.
std::pair<Dataset, Dataset> load_pair(const DataArgs& a, std::uint64_t seed) {
  if (!a.test_path.empty()) {
    Dataset train = binarize_labels(parse_libsvm_file(a.data_path));
    Dataset test = binarize_labels(parse_libsvm_file(a.test_path));
    if (a.normalize) {
      double max_sq = 0.0;
      for (const Sample& z : train.samples) max_sq = std::max(max_sq, z.squared_norm());
      if (max_sq == 0.0) throw DataError("cannot normalize an all-zero dataset");
      const double factor = 1.0 / std::sqrt(max_sq);
      train = scale(train, factor);
      test = scale(test, factor);
    }
    const std::int32_t dim = std::max(train.dimension, test.dimension);
    train.dimension = dim;
    test.dimension = dim;
    return {std::move(train), std::move(test)};
  }
  Dataset data = load_single(a);
  return split(data, a.split_fraction, derive_seed(seed, 1));
}

bool has_both_classes(const Dataset& data) {
  bool pos = false, neg = false;
  for (const Sample& z : data.samples) (z.label > 0 ? pos : neg) = true;
  return pos && neg;
}

void write_json_output(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int cmd_stats(const DataArgs& data_args, const std::string& json_path, bool as_json) {
  const Dataset data = load_single(data_args);
  const DatasetStats stats = compute_stats(data);
  const double bound_beta1 = 1.0 / (128.0 * std::pow(stats.max_norm, 4.0));

  if (as_json || !json_path.empty()) {
    json j;
    j["samples"] = data.size();
    j["dimension"] = data.dimension;
    j["positives"] = stats.n_pos;
    j["negatives"] = stats.n_neg;
    j["positive_fraction"] = stats.positive_fraction;
    j["max_norm"] = stats.max_norm;
    j["step_size_bound_beta1"] = bound_beta1;
    write_json_output(j, json_path);
    return 0;
  }
  std::printf("samples              %zu\n", data.size());
  std::printf("dimension            %d\n", data.dimension);
  std::printf("positives            %zu\n", stats.n_pos);
  std::printf("negatives            %zu\n", stats.n_neg);
  std::printf("positive_fraction    %.6f\n", stats.positive_fraction);
  std::printf("max_norm             %.6f\n", stats.max_norm);
  std::printf("step_size_bound_beta1 %.3e\n", bound_beta1);
  return 0;
}

int cmd_train(const DataArgs& data_args, const SolverArgs& solver_args,
              const std::string& trace_path, const std::string& model_path,
              const std::string& ref_path, bool timing) {
  auto [train, test] = load_pair(data_args, solver_args.seed);
  const DatasetStats stats = compute_stats(train);
  const RegularizerSpec reg = make_reg(solver_args);
  const SolverConfig cfg = make_solver_config(solver_args);

  EvalHooks hooks;
  const bool test_usable = has_both_classes(test);
  if (test_usable)
    hooks.test_auc = [&test](const Vector& w) { return dataset_auc(w, test); };
  else
    std::cerr << "warning: held-out set lacks a class, test AUC omitted\n";
  if (!ref_path.empty()) hooks.reference = io::load_model(ref_path).weights;

  SolveResult result;
  if (solver_args.algo == "vrspam")
    result = vrspam_solve(train, stats, reg, cfg, hooks);
  else if (solver_args.algo == "spam")
    result = spam_solve(train, stats, reg, cfg, hooks);
  else if (solver_args.algo == "pgd")
    result = pgd_solve(train, stats, reg, cfg, hooks);
  else
    throw ConfigError("algo must be vrspam, spam, or pgd");

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw IoError("cannot write '" + trace_path + "'");
    io::write_trace_csv(out, result.trace, timing);
  }
  if (!model_path.empty()) {
    json meta;
    meta["algo"] = solver_args.algo;
    meta["reg"] = solver_args.reg;
    meta["beta"] = reg.beta;
    meta["beta1"] = reg.beta1;
    meta["eta"] = cfg.eta > 0.0 ? cfg.eta
                                : default_step_size(stats, strong_convexity(reg), cfg.theta);
    meta["theta"] = cfg.theta;
    meta["inner_steps"] = cfg.inner_steps != 0 ? cfg.inner_steps : train.size();
    meta["epochs"] = cfg.epochs;
    meta["seed"] = cfg.seed;
    meta["normalize"] = data_args.normalize;
    meta["warm_start"] = solver_args.warm_start;
    io::save_model(model_path, result.weights, meta);
  }

  if (test_usable)
    std::printf("%.6f\n", *result.trace.back().test_auc);
  else
    std::printf("%.6f\n", result.trace.back().objective);
  return 0;
}

int cmd_cv(const DataArgs& data_args, const SolverArgs& solver_args, std::size_t folds,
           const std::vector<double>& beta_grid, const std::vector<double>& beta1_grid,
           const std::string& json_path) {
  auto [train, test] = load_pair(data_args, solver_args.seed);
  (void)test;

  CvConfig cv;
  cv.folds = folds;
  cv.beta_grid = beta_grid;
  cv.beta1_grid = beta1_grid;
  const RegularizerSpec reg = make_reg(solver_args);
  const SolverConfig base = make_solver_config(solver_args);

  const CvResult result = cross_validate(train, reg.kind, cv, base, solver_args.seed);

  json j;
  j["best_beta"] = result.best_beta;
  j["best_beta1"] = result.best_beta1;
  j["folds"] = folds;
  j["cells"] = json::array();
  for (const CvCell& cell : result.table) {
    j["cells"].push_back({{"beta", cell.beta},
                          {"beta1", cell.beta1},
                          {"mean_auc", cell.mean_auc},
                          {"std_auc", cell.std_auc}});
  }
  write_json_output(j, json_path);
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& data_path) {
  const io::Model model = io::load_model(model_path);
  Dataset data = binarize_labels(parse_libsvm_file(data_path));
  if (data.dimension > model.weights.size())
    throw ConfigError("data dimension " + std::to_string(data.dimension) +
                      " exceeds model dimension " + std::to_string(model.weights.size()));
  data.dimension = static_cast<std::int32_t>(model.weights.size());
  std::printf("%.4f\n", dataset_auc(model.weights, data));
  return 0;
}

int cmd_check(const DataArgs& data_args, const SolverArgs& solver_args,
              std::uint64_t seed, std::size_t draws, const std::string& json_path) {
  const Dataset data = load_single(data_args);
  const RegularizerSpec reg = make_reg(solver_args);
  const InvariantReport report = run_invariant_suite(data, reg, seed, draws);

  for (const CheckResult& c : report.checks)
    std::printf("%-26s %-4s worst margin %+.3e  (%zu draws)\n", c.name.c_str(),
                c.passed ? "ok" : "FAIL", c.worst_margin, c.draws);

  if (!json_path.empty()) {
    json j;
    j["all_passed"] = report.all_passed();
    j["checks"] = json::array();
    for (const CheckResult& c : report.checks)
      j["checks"].push_back({{"name", c.name},
                             {"passed", c.passed},
                             {"worst_margin", c.worst_margin},
                             {"draws", c.draws}});
    write_json_output(j, json_path);
  }
  return report.all_passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AUC maximization with variance-reduced stochastic proximal updates"};
  app.require_subcommand(1);

  DataArgs data_args;
  SolverArgs solver_args;

  auto add_data_options = [&](CLI::App* sub, bool with_split) {
    sub->add_option("--data", data_args.data_path, "training data file, '-' for stdin")
        ->required();
    sub->add_flag("--normalize", data_args.normalize,
                  "rescale features so the max sample norm is 1");
    if (with_split) {
      auto* test = sub->add_option("--test", data_args.test_path, "held-out data file");
      auto* frac = sub->add_option("--split-fraction", data_args.split_fraction,
                                   "train fraction for the seeded shuffle split")
                       ->capture_default_str();
      test->excludes(frac);
      frac->excludes(test);
    }
  };

  auto add_solver_options = [&](CLI::App* sub, bool with_algo) {
    if (with_algo)
      sub->add_option("--algo", solver_args.algo, "vrspam, spam, or pgd")
          ->check(CLI::IsMember({"vrspam", "spam", "pgd"}))
          ->capture_default_str();
    sub->add_option("--reg", solver_args.reg, "l2 or net")
        ->check(CLI::IsMember({"l2", "net"}))
        ->capture_default_str();
    sub->add_option("--beta", solver_args.beta, "strong-convexity weight")
        ->capture_default_str();
    sub->add_option("--beta1", solver_args.beta1, "L1 weight (net only)")
        ->capture_default_str();
    sub->add_option("--eta", solver_args.eta, "step size; 0 = theta * beta / (128 M^4)")
        ->capture_default_str();
    sub->add_option("--theta", solver_args.theta, "step-size ratio for automatic eta")
        ->capture_default_str();
    sub->add_option("--m", solver_args.inner_steps, "inner steps per stage; 0 = n")
        ->capture_default_str();
    sub->add_option("--epochs", solver_args.epochs, "stages (vrspam/pgd) or passes (spam)")
        ->capture_default_str();
    sub->add_option("--seed", solver_args.seed, "RNG seed")->capture_default_str();
    sub->add_option("--warm-start", solver_args.warm_start, "zero or spam-one-pass")
        ->check(CLI::IsMember({"zero", "spam-one-pass"}))
        ->capture_default_str();
    sub->add_option("--spam-c", solver_args.spam_c,
                    "schedule constant c in c/(1 + c beta t); 0 = 1/beta")
        ->capture_default_str();
  };

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "dataset summary");
  bool stats_json = false;
  std::string stats_json_path;
  add_data_options(stats_cmd, false);
  stats_cmd->add_flag("--json", stats_json, "JSON to stdout");
  stats_cmd->add_option("--out", stats_json_path, "write JSON to a file");

  // train
  auto* train_cmd = app.add_subcommand("train", "fit a linear scorer");
  std::string trace_path, model_path, ref_path;
  bool timing = false;
  add_data_options(train_cmd, true);
  add_solver_options(train_cmd, true);
  train_cmd->add_option("--trace", trace_path, "write the per-stage trace CSV here");
  train_cmd->add_option("--model", model_path, "write the fitted model JSON here");
  train_cmd->add_option("--ref", ref_path,
                        "model JSON whose weights anchor the dist_sq_to_ref column");
  train_cmd->add_flag("--timing", timing,
                      "record wall time in the trace (breaks byte-identity of reruns)");

  // cv
  auto* cv_cmd = app.add_subcommand("cv", "k-fold grid search for the regularizer");
  std::size_t folds = 5;
  std::vector<double> beta_grid, beta1_grid;
  std::string cv_json_path;
  add_data_options(cv_cmd, true);
  add_solver_options(cv_cmd, false);
  cv_cmd->add_option("--folds", folds, "number of folds")->capture_default_str();
  cv_cmd->add_option("--beta-grid", beta_grid, "comma-separated; default 10^-5..10^5")
      ->delimiter(',');
  cv_cmd->add_option("--beta1-grid", beta1_grid, "comma-separated; net only")
      ->delimiter(',');
  cv_cmd->add_option("--out", cv_json_path, "write the CV report JSON to a file");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "AUC of a saved model on a dataset");
  std::string eval_model_path, eval_data_path;
  eval_cmd->add_option("--model", eval_model_path, "model JSON")->required();
  eval_cmd->add_option("--data", eval_data_path, "data file, '-' for stdin")->required();

  // check
  auto* check_cmd = app.add_subcommand("check", "randomized invariant audit");
  std::uint64_t check_seed = 1;
  std::size_t draws = 1000;
  std::string check_json_path;
  add_data_options(check_cmd, false);
  add_solver_options(check_cmd, false);
  check_cmd->add_option("--check-seed", check_seed, "seed for the audit draws")
      ->capture_default_str();
  check_cmd->add_option("--draws", draws, "random states per check")->capture_default_str();
  check_cmd->add_option("--out", check_json_path, "write the audit report JSON to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (stats_cmd->parsed()) return cmd_stats(data_args, stats_json_path, stats_json);
    if (train_cmd->parsed())
      return cmd_train(data_args, solver_args, trace_path, model_path, ref_path, timing);
    if (cv_cmd->parsed())
      return cmd_cv(data_args, solver_args, folds, beta_grid, beta1_grid, cv_json_path);
    if (eval_cmd->parsed()) return cmd_eval(eval_model_path, eval_data_path);
    if (check_cmd->parsed())
      return cmd_check(data_args, solver_args, check_seed, draws, check_json_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
