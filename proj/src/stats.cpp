#include "pvol/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "pvol/errors.hpp"

namespace pvol {
namespace {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;  // multiple of bound
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

namespace detail {

void deterministic_shuffle(std::vector<std::string>& items,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(draw_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace detail

double relative_error(double predicted_ml, double reference_ml) {
  if (!(predicted_ml > 0.0) || !(reference_ml > 0.0) ||
      !std::isfinite(predicted_ml) || !std::isfinite(reference_ml))
    throw DomainError("relative error needs two positive volumes");
  return (reference_ml - predicted_ml) / ((reference_ml + predicted_ml) / 2.0);
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw InputError("percentile of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

AgreementReport bland_altman(std::span<const VolumePair> pairs) {
  if (pairs.size() < 2)
    throw InputError("Bland-Altman needs at least 2 volume pairs, got " +
                     std::to_string(pairs.size()));

  AgreementReport report;
  report.pairs.assign(pairs.begin(), pairs.end());

  std::vector<double> diffs;
  diffs.reserve(pairs.size());
  for (const auto& pair : pairs) {
    if (!(pair.predicted_ml > 0.0) || !(pair.reference_ml > 0.0))
      throw DomainError("volume pair for patient \"" + pair.patient_id +
                        "\" is not positive");
    diffs.push_back(pair.reference_ml - pair.predicted_ml);
    report.relative_errors.push_back(
        relative_error(pair.predicted_ml, pair.reference_ml));
  }

  const double n = static_cast<double>(diffs.size());
  double sum = 0.0;
  for (const double d : diffs) sum += d;
  report.bias_ml = sum / n;

  double ss = 0.0;
  for (const double d : diffs) {
    const double dev = d - report.bias_ml;
    ss += dev * dev;
  }
  report.sd_ml = std::sqrt(ss / (n - 1.0));
  report.loa_low_ml = report.bias_ml - 1.96 * report.sd_ml;
  report.loa_high_ml = report.bias_ml + 1.96 * report.sd_ml;
  report.diff_p2_5_ml = percentile(diffs, 0.025);
  report.diff_p97_5_ml = percentile(diffs, 0.975);
  return report;
}

FoldAssignment kfold_split(std::span<const std::string> patient_ids, int k,
                           std::uint64_t seed) {
  if (k < 2) throw InputError("k-fold split needs k >= 2");
  if (patient_ids.size() < static_cast<std::size_t>(k))
    throw InputError("k-fold split needs at least k patients (k=" +
                     std::to_string(k) + ", n=" +
                     std::to_string(patient_ids.size()) + ")");
  std::vector<std::string> ids(patient_ids.begin(), patient_ids.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw InputError("duplicate patient ids in k-fold input");

  detail::deterministic_shuffle(ids, seed);

  FoldAssignment out;
  out.fold_count = k;
  for (std::size_t i = 0; i < ids.size(); ++i)
    out.assignment[ids[i]] = static_cast<int>(i % k);
  return out;
}

std::vector<std::size_t> sample_training_frames(const Sweep& sweep) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < sweep.frame_count(); i += 5)
    indices.push_back(i);
  return indices;
}

std::pair<std::vector<std::string>, std::vector<std::string>>
holdout_test_selection(std::span<const PatientRecord> patients, std::size_t n,
                       std::uint64_t seed) {
  std::vector<std::string> dual;
  std::vector<std::string> all;
  std::set<std::string> seen;
  for (const auto& p : patients) {
    if (!seen.insert(p.id).second)
      throw InputError("duplicate patient id \"" + p.id + "\"");
    all.push_back(p.id);
    if (p.has_dual_plane_pred()) dual.push_back(p.id);
  }
  if (dual.size() < n)
    throw InputError("test selection needs " + std::to_string(n) +
                     " dual-plane patients but only " +
                     std::to_string(dual.size()) + " exist");

  std::sort(dual.begin(), dual.end());
  detail::deterministic_shuffle(dual, seed);
  std::vector<std::string> test(dual.begin(),
                                dual.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(test.begin(), test.end());

  std::vector<std::string> train;
  const std::set<std::string> test_set(test.begin(), test.end());
  for (const auto& id : all)
    if (!test_set.count(id)) train.push_back(id);
  std::sort(train.begin(), train.end());
  return {std::move(test), std::move(train)};
}

}  // namespace pvol
