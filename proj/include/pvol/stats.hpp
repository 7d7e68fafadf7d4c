#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pvol/manifest.hpp"
#include "pvol/mask.hpp"

namespace pvol {

struct VolumePair {
  std::string patient_id;
  double predicted_ml = 0.0;
  double reference_ml = 0.0;
};

/// Bland-Altman agreement over a cohort. The signed convention everywhere is
/// reference minus predicted; every report header repeats it.
struct AgreementReport {
  std::vector<VolumePair> pairs;
  double bias_ml = 0.0;      ///< mean(reference - predicted)
  double sd_ml = 0.0;        ///< sample standard deviation of the differences
  double loa_low_ml = 0.0;   ///< bias - 1.96 sd
  double loa_high_ml = 0.0;  ///< bias + 1.96 sd
  double diff_p2_5_ml = 0.0;   ///< empirical 2.5th percentile of differences
  double diff_p97_5_ml = 0.0;  ///< empirical 97.5th percentile
  std::vector<double> relative_errors;  ///< per pair, mean-normalized
};

AgreementReport bland_altman(std::span<const VolumePair> pairs);

/// (reference - predicted) / ((reference + predicted) / 2); both inputs > 0.
double relative_error(double predicted_ml, double reference_ml);

/// Linear-interpolation percentile (p in [0, 1]) of an unsorted sample.
double percentile(std::span<const double> values, double p);

struct FoldAssignment {
  int fold_count = 0;
  std::map<std::string, int> assignment;  // patient_id -> fold in [0, k)
};

/// Patient-level k-fold split: ids are sorted, shuffled with the seed, then
/// dealt round-robin. Deterministic for fixed (ids, k, seed) regardless of
/// input order; fold sizes differ by at most one.
FoldAssignment kfold_split(std::span<const std::string> patient_ids, int k,
                           std::uint64_t seed);

/// Training-frame subsampling: every fifth frame starting at index 0.
std::vector<std::size_t> sample_training_frames(const Sweep& sweep);

/// Seeded selection of n dual-plane patients as the held-out test set;
/// everyone else (including single-plane patients) trains.
std::pair<std::vector<std::string>, std::vector<std::string>>
holdout_test_selection(std::span<const PatientRecord> patients, std::size_t n,
                       std::uint64_t seed);

namespace detail {
/// Fisher-Yates with an unbiased bounded draw; stable across platforms
/// (std::shuffle is implementation-defined).
void deterministic_shuffle(std::vector<std::string>& items,
                           std::uint64_t seed);
}  // namespace detail

}  // namespace pvol
