// Acceptance checks against the published 1555-row source dataset. The file
// is located through the first argument or SRDSM_DATASET; when it is absent
// the binary exits with status 77 so the test harness reports a skip.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "srdsm/error.hpp"
#include "srdsm/rdsm.hpp"
#include "srdsm/rng.hpp"
#include "srdsm/sensitivity.hpp"

using namespace srdsm;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kSkip = 77;
int failures = 0;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void report(int id, const char* title, bool ok, double seconds, double budget, const std::string& detail) {
  const bool pass = ok && seconds <= budget;
  if (!pass) ++failures;
  std::printf("%s criterion %d (%s): %s; %.2f s of %.0f s budget\n", pass ? "PASS" : "FAIL", id, title,
              detail.c_str(), seconds, budget);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : "";
  if (path.empty())
    if (const char* env = std::getenv("SRDSM_DATASET")) path = env;
  if (path.empty() || !std::filesystem::exists(path)) {
    std::printf("SKIP criteria 8-10: published dataset not found (set SRDSM_DATASET)\n");
    return kSkip;
  }

  Dataset data;
  try {
    data = load_dataset_csv(path);
  } catch (const Error& e) {
    std::printf("FAIL criteria 8-10: cannot load %s: %s\n", path.c_str(), e.what());
    return 1;
  }

  // 8: screening reproduction.
  auto t = Clock::now();
  const auto screening = screen_fdr_logworth(data, Output::TS, RetentionRule::total());
  std::set<std::string> top4;
  for (std::size_t i = 0; i < 4 && i < screening.entries.size(); ++i) top4.insert(screening.entries[i].name);
  const double lw_a = screening.find("A").logworth;
  const bool ok8 = screening.entries.front().name == "A" && top4 == std::set<std::string>{"A", "E", "XS", "Aln"} &&
                   screening.retained.size() == 4 && std::abs(lw_a - 59.38) <= 0.2 * 59.38;
  std::string top;
  for (const auto& n : top4) top += n + " ";
  report(8, "screening reproduction", ok8, since(t), 10.0,
         "top four {" + top + "}, logworth(A) " + std::to_string(lw_a));

  // 9: TS surrogate recipe on 25 held-out rows.
  t = Clock::now();
  const auto split = hold_out(data, 25, Rng::derive(7, 11));
  Samples x;
  std::vector<double> y;
  for (const auto& r : split.fit.rows) {
    x.emplace_back(r.x.begin(), r.x.end());
    y.push_back(r.energy.TS);
  }
  NetworkSpec spec = default_network(Output::TS);
  spec.input_dim = kParamCount;
  spec.seed = Rng::derive(7, 100);
  const auto model = train(spec, x, y);
  std::vector<double> pred, actual;
  for (const auto& r : split.validation.rows) {
    pred.push_back(forward(model, std::vector<double>(r.x.begin(), r.x.end())));
    actual.push_back(r.energy.TS);
  }
  const auto err = relative_error(pred, actual, 1e-9);
  report(9, "TS surrogate recipe", err.mae_pct <= 6.0, since(t), 900.0,
         "held-out MAE " + std::to_string(err.mae_pct) + "%");

  // 10: UQ sweep over nested subsets of the screening order.
  DirectOptions dopt;
  dopt.network.seed = Rng::derive(7, 100);
  dopt.train_full = false;
  const auto direct = fit_direct(split.fit, dopt);
  t = Clock::now();
  std::vector<std::vector<std::string>> subsets;
  for (std::size_t k = 1; k <= direct.retained.size(); ++k)
    subsets.emplace_back(direct.retained.begin(), direct.retained.begin() + k);
  const auto uq = uq_sweep([&](const ParamVector& p) { return direct.predict(p); }, subsets, 5000, Rng::derive(7, 14));
  bool monotone = true;
  for (std::size_t k = 1; k < uq.rows.size(); ++k) monotone = monotone && uq.rows[k].std > uq.rows[k - 1].std;
  const auto& last = uq.rows.back();
  const bool ok10 = std::abs(last.mean - 234.8) <= 0.03 * 234.8 && monotone && std::abs(last.std - 7.77) <= 0.3 * 7.77;
  report(10, "UQ sweep", ok10, since(t), 120.0,
         "final mean " + std::to_string(last.mean) + ", final std " + std::to_string(last.std) +
             (monotone ? ", std increasing" : ", std NOT increasing"));

  std::printf("%s: %d of 3 dataset criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
