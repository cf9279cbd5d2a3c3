//
// Copyright 2026 The dphist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPHIST_HISTOGRAM_HPP_
#define DPHIST_HISTOGRAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dphist/bignum.hpp"
#include "dphist/mechanism.hpp"
#include "dphist/random.hpp"

namespace dphist {

// A dataset over the universe [1, m]: an ordered tuple of n >= 1 rows.
struct Dataset {
  uint64_t universe_size = 0;
  std::vector<uint64_t> rows;

  int64_t n() const { return static_cast<int64_t>(rows.size()); }
  void Validate() const;  // throws IngestionError with the offending row index
};

// Text format: first line "m n", then n lines of one label each.
Dataset ParseDataset(std::istream& in);
Dataset ReadDatasetFile(const std::string& path);

struct HistogramEntry {
  uint64_t label = 0;
  int64_t count = 0;

  friend bool operator==(const HistogramEntry& a, const HistogramEntry& b) {
    return a.label == b.label && a.count == b.count;
  }
};

// Canonical sparse histogram: entries strictly increasing by label with
// counts in [0, n]; labels absent from the vector have count zero.
struct PartialHistogram {
  uint64_t universe_size = 0;
  int64_t n = 0;
  std::vector<HistogramEntry> entries;

  int64_t CountFor(uint64_t label) const;
  void Validate() const;

  friend bool operator==(const PartialHistogram& a, const PartialHistogram& b) {
    return a.universe_size == b.universe_size && a.n == b.n &&
           a.entries == b.entries;
  }
};

// Lines "label count", labels ascending, ASCII decimal, LF-terminated.
// pad_to_entries > 0 appends "0 0" sentinel lines so every serialized
// histogram has the same number of lines regardless of how many bins were
// released; the parser skips such sentinels.
std::string SerializeHistogram(const PartialHistogram& h,
                               int64_t pad_to_entries = 0);
PartialHistogram ParseHistogram(std::istream& in, uint64_t universe_size,
                                int64_t n);
void WriteHistogramFile(const std::string& path, const PartialHistogram& h,
                        int64_t pad_to_entries = 0);
PartialHistogram ReadHistogramFile(const std::string& path,
                                   uint64_t universe_size, int64_t n);

// Exact multiplicity of every label appearing in D; absent labels are
// absent from the map. Ordered by label, which fixes the iteration (and
// randomness-consumption) order everywhere downstream.
std::map<uint64_t, int64_t> TrueCounts(const Dataset& D);

// Independent noisy counts for a fixed query set A (ascending labels, each
// in [1, m], fixed independently of the data — caller's obligation). One
// uniform draw per bin, in ascending label order.
PartialHistogram BasicHistogram(const CountingMechanism& mechanism,
                                const std::vector<uint64_t>& query_labels,
                                const std::map<uint64_t, int64_t>& true_counts,
                                uint64_t universe_size, UniformSource& source);
PartialHistogram BasicHistogram(const CountingMechanism& mechanism,
                                const std::vector<uint64_t>& query_labels,
                                const Dataset& D, UniformSource& source);

// Parallel variant: bin x draws from the substream root.Derive(x), so the
// output is independent of the thread partition, byte-identical for a fixed
// seed, and identically distributed to the sequential release (the per-bin
// draws are independent either way).
PartialHistogram BasicHistogramParallel(
    const CountingMechanism& mechanism,
    const std::vector<uint64_t>& query_labels,
    const std::map<uint64_t, int64_t>& true_counts, uint64_t universe_size,
    const RandomStream& root, int threads);

// Noisy counts for the bins with nonzero true count, keeping only counts
// strictly above the threshold b.
PartialHistogram StabilityHistogram(const CountingMechanism& mechanism,
                                    int64_t threshold, const Dataset& D,
                                    UniformSource& source);

// Exact tail certificate 2 * Pr[M(1, U) > b] as a rational.
BigRat StabilityDeltaCertificate(const CountingMechanism& mechanism,
                                 int64_t threshold);

// Minimal b in [0, n] with 2 * Pr[M(1,U) > b] <= 1/delta_den, decided by
// the exact rational inequality. Throws InfeasibleError (naming the minimal
// achievable delta) if no threshold works.
int64_t StabilityThreshold(const CountingMechanism& mechanism,
                           uint64_t delta_den);

}  // namespace dphist

#endif  // DPHIST_HISTOGRAM_HPP_
