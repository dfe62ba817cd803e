// datainf: data-informativity analyses from input/output records.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "datainf/ct.hpp"
#include "datainf/io.hpp"
#include "datainf/reldeg.hpp"
#include "datainf/verify.hpp"
#include "datainf/zerodyn.hpp"

using namespace datainf;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNotInformative = 2;

struct Common {
  ToleranceConfig tol;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--rank-rtol", c.tol.rank_rtol, "relative rank tolerance");
  cmd->add_option("--membership-rtol", c.tol.membership_rtol, "relative span-membership tolerance");
  cmd->add_option("--stability-margin", c.tol.stability_margin, "margin around the stability boundary");
  cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "text"}));
}

void emit(const AnalysisReport& r, const Common& c) {
  if (c.format == "text") {
    std::cout << r.to_text();
  } else {
    std::cout << r.to_json().dump(2) << "\n";
  }
}

AnalysisReport make_report(const std::string& command, const Common& c) {
  c.tol.validate();
  AnalysisReport r;
  r.command = command;
  r.tolerances_used = c.tol;
  return r;
}

json complex_to_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

int cmd_reldeg(const std::string& path, int lag, int order, int window, const Common& c) {
  auto rep = make_report("reldeg", c);
  const auto ds = ingest(path);
  const auto v = reldeg_informativity(ds, lag, c.tol);
  rep.payload["kind"] = kind_name(v.kind);
  rep.payload["r"] = v.kind == RelDegVerdict::Kind::Informative ? json(v.r) : json(nullptr);
  rep.payload["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  rep.payload["lower_bound"] = reldeg_lower_bound(ds, lag, c.tol);
  rep.conditions.push_back({"data length >= lag + 1", ds.min_length() >= lag + 1});
  rep.conditions.push_back({"relative degree determined by the MPUM", v.kind != RelDegVerdict::Kind::NotInformative});
  if (v.informative()) {
    const auto cert = reldeg_certificate(lag, v.r, *v.witness);
    const auto gen = mpum_generators(ds, lag);
    rep.conditions.push_back({"certificate window lies in the MPUM",
                              in_span(stacked_window(cert), gen.generators, c.tol)});
  }
  if (v.kind == RelDegVerdict::Kind::InformativeInfinite) rep.warnings.push_back("no input reaches the output");
  if (order >= 0) {
    const int L = window > 0 ? window : lag + order + 1;
    const bool pe = is_persistently_exciting(ds, L + order, c.tol);
    rep.conditions.push_back({"input persistently exciting of order L + n", pe});
    if (pe) {
      const auto d = reldeg_pe(ds, lag, order, L, c.tol);
      rep.payload["r_pe"] = d.infinite ? json("inf") : json(d.value);
    }
    const auto sharp = reldeg_sharp(ds, lag, L, c.tol);
    rep.payload["r_sharp"] = sharp ? json(*sharp) : json(nullptr);
  }
  emit(rep, c);
  return v.kind == RelDegVerdict::Kind::NotInformative ? kNotInformative : kOk;
}

int cmd_vecreldeg(const std::string& path, int lag, const Common& c) {
  auto rep = make_report("vecreldeg", c);
  const auto ds = ingest(path);
  const auto v = vecreldeg_informativity(ds, lag, c.tol);
  rep.payload["kind"] = kind_name(v.kind);
  rep.payload["r"] = v.r;
  json G = json::array();
  for (Eigen::Index i = 0; i < v.G.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < v.G.cols(); ++j) {
      row.push_back(v.identified_mask(i, j) ? json(v.G(i, j)) : json(nullptr));
    }
    G.push_back(std::move(row));
  }
  rep.payload["G"] = G;
  json pairs = json::array();
  for (Eigen::Index i = 0; i < v.pair_degree.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.pair_degree.cols(); ++j) {
      pairs.push_back({{"output", i + 1},
                       {"input", j + 1},
                       {"degree", v.pair_degree(i, j) >= 0 ? json(v.pair_degree(i, j)) : json(nullptr)},
                       {"lower_bound", v.pair_lower_bound(i, j)}});
    }
  }
  rep.payload["pairs"] = pairs;
  rep.conditions.push_back({"every output degree determined", !v.r.empty()});
  rep.conditions.push_back({"decoupling matrix invertible for all unidentified entries",
                            v.kind == VecRelDegVerdict::Kind::Full});
  if (v.kind == VecRelDegVerdict::Kind::DecouplingOnly) {
    rep.warnings.push_back("degrees determined, decoupling matrix not certified invertible");
  }
  emit(rep, c);
  return v.kind == VecRelDegVerdict::Kind::NotInformative ? kNotInformative : kOk;
}

int cmd_zerodyn(const std::string& path, int lag, int order, int r_s, const Common& c) {
  auto rep = make_report("zerodyn", c);
  const auto ds = ingest(path);
  const auto v = algorithm2(ds, lag, order, r_s, c.tol);
  rep.payload["s"] = v.s;
  rep.payload["q_tilde"] = v.q_tilde ? matrix_to_json(*v.q_tilde) : json(nullptr);
  rep.payload["spectrum"] = v.spectrum ? complex_to_json(*v.spectrum) : json(nullptr);
  rep.conditions.push_back({"(a) McMillan degree condition", v.conditions.mcmillan_ok});
  rep.conditions.push_back({"(b) relative degree sum informative", v.conditions.reldeg_sum_ok});
  rep.conditions.push_back({"(c) MPUM zero dynamics away from the unit circle",
                            v.conditions.mpum_zd_stable != Stability::Boundary});
  if (v.conditions.mpum_zd_stable == Stability::Boundary && v.spectrum) {
    rep.warnings.push_back("zero-dynamics spectrum within the stability margin of the unit circle");
  }
  emit(rep, c);
  return v.s == 0 ? kNotInformative : kOk;
}

int cmd_reconstruct(const std::vector<std::string>& paths, std::vector<int> lags, std::vector<int> orders,
                    int kmax, const Common& c) {
  auto rep = make_report("reconstruct", c);
  if (lags.size() == 1) lags.assign(3, lags[0]);
  if (orders.size() == 1) orders.assign(3, orders[0]);
  if (lags.size() != 3 || orders.size() != 3) {
    fail(Errc::InvalidArgument, "--lag and --order take one value or three");
  }
  std::array<DataSetD, 3> ds;
  for (int i = 0; i < 3; ++i) {
    ds[i] = ingest(paths[static_cast<std::size_t>(i)]);
    if (!ds[i].sampling_time) fail(Errc::InvalidArgument, paths[static_cast<std::size_t>(i)] + ": sampling_time missing");
  }
  const auto sys = reconstruct_from_data({&ds[0], &ds[1], &ds[2]}, {lags[0], lags[1], lags[2]},
                                         {orders[0], orders[1], orders[2]}, kmax, c.tol);
  rep.payload["system"] = system_to_json(sys);
  rep.conditions.push_back({"Markov parameters consistent across rates", true});
  rep.warnings.push_back("sampling times assumed pairwise rationally independent");
  emit(rep, c);
  return kOk;
}

int cmd_check_pe(const std::string& path, int window, const Common& c) {
  auto rep = make_report("check-pe", c);
  const auto ds = ingest(path);
  const auto Hu = mosaic_hankel(ds, window, HankelPart::Input);
  rep.payload["pe"] = is_persistently_exciting(ds, window, c.tol);
  rep.payload["rank"] = numerical_rank(Hu, c.tol);
  rep.payload["rows"] = Hu.rows();
  emit(rep, c);
  return kOk;
}

struct SimulateArgs {
  std::string system;
  std::string input = "pe";
  std::string output;
  int length = 0;
  int order = 0;
  int settle = 0;
  double sampling_time = 0.0;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a, const ToleranceConfig& tol) {
  std::ifstream in(a.system);
  if (!in) fail(Errc::ParseError, "cannot open '" + a.system + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ParseError, a.system + ": " + e.what());
  }
  const auto rec = system_from_json(j);
  DiscreteStateSpace sys = rec.discrete();
  if (rec.continuous) {
    if (a.sampling_time <= 0) fail(Errc::InvalidArgument, "continuous system needs --sampling-time");
    sys = zoh_discretize(rec.continuous_system(), a.sampling_time);
  }
  MatrixXd u;
  if (a.input == "impulse") {
    u = impulse_input(sys.m(), a.settle > 0 ? a.settle : std::max<Eigen::Index>(sys.n(), 1));
  } else {
    const int T = a.length > 0 ? a.length : static_cast<int>((sys.m() + 1) * a.order + 10);
    u = pe_input(T, sys.m(), a.order, a.seed, tol);
  }
  auto ds = simulate_dataset(sys, u, VectorXd::Zero(sys.n()));
  if (a.sampling_time > 0) ds.sampling_time = a.sampling_time;
  const bool as_json = a.output.size() >= 5 && a.output.substr(a.output.size() - 5) == ".json";
  const std::string text = as_json ? dataset_to_json(ds).dump() + "\n" : to_csv(ds);
  if (a.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.output);
    if (!out) fail(Errc::InvalidArgument, "cannot write '" + a.output + "'");
    out << text;
  }
  return kOk;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
  std::vector<SuiteResult> results;
  const bool all = suite == "all";
  if (all || suite == "reldeg") results.push_back(verify_reldeg(trials > 0 ? trials : 200, seed, tol));
  if (all || suite == "zerodyn") results.push_back(verify_zerodyn(trials > 0 ? trials : 100, seed, tol));
  if (all || suite == "ct") results.push_back(verify_ct(trials > 0 ? trials : 50, 10, seed, tol));
  if (all || suite == "properties") results.push_back(verify_properties(seed, tol));
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%-12s %d/%d passed  (%.2f s)\n", r.name.c_str(), r.total - r.failures, r.total, r.seconds);
    for (const auto& n : r.notes) std::printf("  %s\n", n.c_str());
    ok = ok && r.passed();
  }
  return ok ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-informativity analyses for linear time-invariant systems"};
  app.require_subcommand(1);

  Common common;
  std::string data;
  int lag = 0, order = -1, window = 0, reldeg_sum = 0, kmax = kDefaultKmax;

  auto* reldeg = app.add_subcommand("reldeg", "SISO relative degree");
  reldeg->add_option("data", data, "CSV or JSON dataset")->required();
  reldeg->add_option("--lag", lag, "upper bound on the lag")->required();
  reldeg->add_option("--order", order, "state dimension n; enables the excitation-based path");
  reldeg->add_option("--window", window, "window length L for the excitation-based path");
  add_common(reldeg, common);

  auto* vecreldeg = app.add_subcommand("vecreldeg", "vector relative degree and decoupling matrix");
  vecreldeg->add_option("data", data)->required();
  vecreldeg->add_option("--lag", lag)->required();
  add_common(vecreldeg, common);

  auto* zerodyn = app.add_subcommand("zerodyn", "zero-dynamics stability");
  zerodyn->add_option("data", data)->required();
  zerodyn->add_option("--lag", lag)->required();
  zerodyn->add_option("--order", order, "state dimension n")->required();
  zerodyn->add_option("--reldeg-sum", reldeg_sum, "sum of the relative degrees")->required();
  add_common(zerodyn, common);

  std::vector<std::string> paths;
  std::vector<int> lags, orders;
  auto* reconstruct = app.add_subcommand("reconstruct", "continuous system from three sampled datasets");
  reconstruct->add_option("data", paths, "three JSON datasets with sampling_time")->required()->expected(3);
  reconstruct->add_option("--lag", lags, "one lag or one per dataset")->required();
  reconstruct->add_option("--order", orders, "one state dimension or one per dataset")->required();
  reconstruct->add_option("--kmax", kmax, "largest logarithm branch index");
  add_common(reconstruct, common);

  auto* check_pe = app.add_subcommand("check-pe", "persistency of excitation of the input");
  check_pe->add_option("data", data)->required();
  check_pe->add_option("--window", window, "Hankel order L")->required()->check(CLI::PositiveNumber);
  add_common(check_pe, common);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "dataset from a system JSON");
  simulate->add_option("system", sim.system, "system JSON")->required();
  simulate->add_option("--input", sim.input)->check(CLI::IsMember({"impulse", "pe"}));
  simulate->add_option("--length", sim.length, "number of samples for the PE input");
  simulate->add_option("--order", sim.order, "excitation order of the PE input");
  simulate->add_option("--settle", sim.settle, "zero samples around each impulse");
  simulate->add_option("--sampling-time", sim.sampling_time, "ZOH step for continuous systems");
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("-o,--output", sim.output, "output file; .json selects JSON, else CSV");
  add_common(simulate, common);

  std::string suite = "all";
  int trials = 0;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Monte-Carlo comparison against the model-based oracles");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "reldeg", "zerodyn", "ct", "properties"}));
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*reldeg) return cmd_reldeg(data, lag, order, window, common);
    if (*vecreldeg) return cmd_vecreldeg(data, lag, common);
    if (*zerodyn) return cmd_zerodyn(data, lag, order, reldeg_sum, common);
    if (*reconstruct) return cmd_reconstruct(paths, lags, orders, kmax, common);
    if (*check_pe) return cmd_check_pe(data, window, common);
    if (*simulate) return cmd_simulate(sim, common.tol);
    if (*verify) return cmd_verify(suite, trials, seed, common.tol);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
