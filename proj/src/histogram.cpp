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

#include "dphist/histogram.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dphist/errors.hpp"

namespace dphist {

void Dataset::Validate() const {
  if (universe_size == 0) throw IngestionError("dataset: universe size must be >= 1");
  if (rows.empty()) throw IngestionError("dataset: needs at least one row");
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 1 || rows[i] > universe_size) {
      throw IngestionError("dataset: row " + std::to_string(i + 1) +
                           " out of universe [1, " +
                           std::to_string(universe_size) + "]");
    }
  }
}

Dataset ParseDataset(std::istream& in) {
  Dataset d;
  uint64_t n = 0;
  if (!(in >> d.universe_size >> n)) {
    throw IngestionError("dataset: malformed header, expected \"m n\"");
  }
  d.rows.reserve(n);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t row = 0;
    if (!(in >> row)) {
      throw IngestionError("dataset: missing row " + std::to_string(i + 1) +
                           " of " + std::to_string(n));
    }
    d.rows.push_back(row);
  }
  d.Validate();
  return d;
}

Dataset ReadDatasetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open dataset file: " + path);
  return ParseDataset(in);
}

int64_t PartialHistogram::CountFor(uint64_t label) const {
  for (const auto& e : entries) {
    if (e.label == label) return e.count;
    if (e.label > label) break;
  }
  return 0;
}

void PartialHistogram::Validate() const {
  uint64_t prev = 0;
  for (const auto& e : entries) {
    if (e.label < 1 || e.label > universe_size) {
      throw std::invalid_argument("histogram: label out of universe");
    }
    if (e.label <= prev) {
      throw std::invalid_argument("histogram: labels must be strictly increasing");
    }
    if (e.count < 0 || e.count > n) {
      throw std::invalid_argument("histogram: count out of [0, n]");
    }
    prev = e.label;
  }
}

std::string SerializeHistogram(const PartialHistogram& h,
                               int64_t pad_to_entries) {
  std::ostringstream out;
  for (const auto& e : h.entries) {
    out << e.label << ' ' << e.count << '\n';
  }
  for (int64_t i = static_cast<int64_t>(h.entries.size()); i < pad_to_entries;
       ++i) {
    out << "0 0\n";
  }
  return out.str();
}

PartialHistogram ParseHistogram(std::istream& in, uint64_t universe_size,
                                int64_t n) {
  PartialHistogram h;
  h.universe_size = universe_size;
  h.n = n;
  uint64_t label = 0;
  int64_t count = 0;
  size_t line = 0;
  while (in >> label >> count) {
    ++line;
    if (label == 0) continue;  // padding sentinel
    h.entries.push_back({label, count});
  }
  if (!in.eof() && in.fail()) {
    throw IngestionError("histogram: malformed line " + std::to_string(line + 1));
  }
  h.Validate();
  return h;
}

void WriteHistogramFile(const std::string& path, const PartialHistogram& h,
                        int64_t pad_to_entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot open output file: " + path);
  out << SerializeHistogram(h, pad_to_entries);
  if (!out) throw IngestionError("failed writing output file: " + path);
}

PartialHistogram ReadHistogramFile(const std::string& path,
                                   uint64_t universe_size, int64_t n) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open histogram file: " + path);
  return ParseHistogram(in, universe_size, n);
}

std::map<uint64_t, int64_t> TrueCounts(const Dataset& D) {
  D.Validate();
  std::map<uint64_t, int64_t> counts;
  for (uint64_t row : D.rows) ++counts[row];
  return counts;
}

PartialHistogram BasicHistogram(const CountingMechanism& mechanism,
                                const std::vector<uint64_t>& query_labels,
                                const std::map<uint64_t, int64_t>& true_counts,
                                uint64_t universe_size, UniformSource& source) {
  PartialHistogram h;
  h.universe_size = universe_size;
  h.n = mechanism.max_count();
  h.entries.reserve(query_labels.size());
  uint64_t prev = 0;
  for (uint64_t x : query_labels) {
    if (x <= prev || x > universe_size) {
      throw std::invalid_argument(
          "BasicHistogram: query labels must be ascending and in [1, m]");
    }
    prev = x;
    const auto it = true_counts.find(x);
    const int64_t c = it == true_counts.end() ? 0 : it->second;
    const BigNat u = source.Uniform(mechanism.denominator());
    h.entries.push_back({x, mechanism.Evaluate(c, u)});
  }
  return h;
}

PartialHistogram BasicHistogram(const CountingMechanism& mechanism,
                                const std::vector<uint64_t>& query_labels,
                                const Dataset& D, UniformSource& source) {
  return BasicHistogram(mechanism, query_labels, TrueCounts(D),
                        D.universe_size, source);
}

PartialHistogram BasicHistogramParallel(
    const CountingMechanism& mechanism,
    const std::vector<uint64_t>& query_labels,
    const std::map<uint64_t, int64_t>& true_counts, uint64_t universe_size,
    const RandomStream& root, int threads) {
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  PartialHistogram h;
  h.universe_size = universe_size;
  h.n = mechanism.max_count();
  h.entries.resize(query_labels.size());
  uint64_t prev = 0;
  for (uint64_t x : query_labels) {
    if (x <= prev || x > universe_size) {
      throw std::invalid_argument(
          "BasicHistogramParallel: query labels must be ascending and in [1, m]");
    }
    prev = x;
  }
  const auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const uint64_t x = query_labels[i];
      const auto it = true_counts.find(x);
      const int64_t c = it == true_counts.end() ? 0 : it->second;
      RandomStream stream = root.Derive(x);
      h.entries[i] = {x, mechanism.Evaluate(c, stream.Uniform(mechanism.denominator()))};
    }
  };
  const size_t total = query_labels.size();
  const size_t used = std::min<size_t>(static_cast<size_t>(threads),
                                       std::max<size_t>(total, 1));
  std::vector<std::thread> pool;
  const size_t chunk = (total + used - 1) / used;
  for (size_t i = 0; i < used && i * chunk < total; ++i) {
    pool.emplace_back(worker, i * chunk, std::min(total, (i + 1) * chunk));
  }
  for (auto& thread : pool) thread.join();
  return h;
}

PartialHistogram StabilityHistogram(const CountingMechanism& mechanism,
                                    int64_t threshold, const Dataset& D,
                                    UniformSource& source) {
  if (threshold < 0 || threshold > mechanism.max_count()) {
    throw std::invalid_argument("StabilityHistogram: threshold out of [0, n]");
  }
  const auto counts = TrueCounts(D);
  std::vector<uint64_t> support;
  support.reserve(counts.size());
  for (const auto& [label, count] : counts) support.push_back(label);
  PartialHistogram noisy =
      BasicHistogram(mechanism, support, counts, D.universe_size, source);
  PartialHistogram h;
  h.universe_size = noisy.universe_size;
  h.n = noisy.n;
  for (const auto& e : noisy.entries) {
    if (e.count > threshold) h.entries.push_back(e);
  }
  return h;
}

BigRat StabilityDeltaCertificate(const CountingMechanism& mechanism,
                                 int64_t threshold) {
  if (threshold < 0 || threshold > mechanism.max_count()) {
    throw std::invalid_argument("threshold out of [0, n]");
  }
  const BigNat& d = mechanism.denominator();
  const BigNat tail = d - mechanism.CdfScaled(1, threshold);
  return BigRat(BigNat(2) * tail, d);
}

int64_t StabilityThreshold(const CountingMechanism& mechanism,
                           uint64_t delta_den) {
  if (delta_den == 0) throw std::invalid_argument("delta_den must be >= 1");
  const BigRat delta(1, delta_den);
  // The certificate is non-increasing in b, so binary search the minimal b.
  int64_t lo = 0, hi = mechanism.max_count();
  if (StabilityDeltaCertificate(mechanism, hi) > delta) {
    throw InfeasibleError(
        "delta-infeasible: minimal achievable delta is " +
        StabilityDeltaCertificate(mechanism, hi).ToString());
  }
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (StabilityDeltaCertificate(mechanism, mid) <= delta) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace dphist
