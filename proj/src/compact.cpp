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

#include "dphist/compact.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dphist/errors.hpp"

namespace dphist {

EmptyBinSampler::EmptyBinSampler(std::shared_ptr<const CountingMechanism> inner,
                                 BigNat d0)
    : inner_(std::move(inner)), d0_(std::move(d0)) {
  if (!inner_) throw std::invalid_argument("EmptyBinSampler: null mechanism");
  if (!inner_->monotone()) {
    throw std::invalid_argument("EmptyBinSampler: inner mechanism must be monotone");
  }
  const BigNat& d = inner_->denominator();
  if (BigNat(3) * d0_ < BigNat(4) * d) {
    throw std::invalid_argument("EmptyBinSampler: d0 must be >= (4/3) d");
  }
  auto [q, r] = DivMod(d0_, d);
  q_ = q;
  r_ = r;
}

BigNat EmptyBinSampler::MapIndex(const BigNat& u0) const {
  if (u0.IsZero() || u0 > d0_) {
    throw std::invalid_argument("EmptyBinSampler: u0 out of [1, d0]");
  }
  const BigNat q1 = q_ + BigNat(1);
  if (!r_.IsZero() && u0 <= r_ * q1) {
    return CeilDiv(u0, q1);
  }
  return CeilDiv(u0 - r_, q_);
}

BigNat EmptyBinSampler::MaxPreimageAtOrBelow(const BigNat& u) const {
  if (u > inner_->denominator()) {
    throw std::invalid_argument("EmptyBinSampler: u out of [0, d]");
  }
  if (!r_.IsZero() && u <= r_) {
    return (q_ + BigNat(1)) * u;
  }
  return q_ * u + r_;
}

int64_t EmptyBinSampler::Eval(const BigNat& u0) const {
  return inner_->Evaluate(0, MapIndex(u0));
}

std::pair<BigNat, BigNat> EmptyBinSampler::SupportRange(int64_t v) const {
  if (v < 0 || v > inner_->max_count()) {
    throw std::invalid_argument("EmptyBinSampler: count out of [0, n]");
  }
  const BigNat f_lo = inner_->Cdf0(v - 1);
  const BigNat f_hi = inner_->Cdf0(v);
  if (f_lo == f_hi) {
    throw std::invalid_argument("empty-support: count " + std::to_string(v) +
                                " has zero probability under M0");
  }
  const BigNat lo = MaxPreimageAtOrBelow(f_lo) + BigNat(1);
  const BigNat hi = MaxPreimageAtOrBelow(f_hi);
  return {lo, hi};
}

BigNat EmptyBinSampler::SampleSupport(int64_t v, UniformSource& source) const {
  const auto [lo, hi] = SupportRange(v);
  return lo + source.Uniform(hi - lo + BigNat(1)) - BigNat(1);
}

std::shared_ptr<const CountingMechanism> MakeCompactInner(
    const CompactMechanismSpec& spec) {
  if (spec.g_den == 0) {
    return std::make_shared<GeoSampleMechanism>(spec.n, spec.e_den);
  }
  return std::make_shared<FastSampleMechanism>(spec.n, spec.e_den, spec.g_den);
}

int ChooseFieldExponent(uint64_t universe_size, const BigNat& d,
                        uint64_t e_den) {
  if (universe_size == 0 || e_den == 0 || d.IsZero()) {
    throw std::invalid_argument("ChooseFieldExponent: bad parameters");
  }
  BigNat arg = BigNat(30) * d * BigNat(e_den);
  if (BigNat(universe_size) > arg) arg = BigNat(universe_size);
  const int64_t log_target = CeilLog2(arg);
  int ell = 0;
  int64_t width = 2;  // 2 * 3^ell
  while (width < log_target) {
    width *= 3;
    ++ell;
  }
  return ell;
}

CompactHistogramRepr CompactHistogram(const CompactMechanismSpec& spec,
                                      int ell, const Dataset& D,
                                      UniformSource& source) {
  if (spec.n != D.n()) {
    throw std::invalid_argument("CompactHistogram: spec.n must match the dataset");
  }
  auto inner = MakeCompactInner(spec);
  GF2Field field(ell);
  const BigNat d0 = field.Order();
  if (d0 < BigNat(D.universe_size)) {
    throw std::invalid_argument("CompactHistogram: field smaller than universe");
  }
  if (BigNat(static_cast<uint64_t>(spec.n) + 1) > d0) {
    throw std::invalid_argument(
        "CompactHistogram: field too small for n+1 interpolation points");
  }
  EmptyBinSampler sampler(inner, d0);

  const auto counts = TrueCounts(D);
  std::vector<uint64_t> support;
  support.reserve(counts.size());
  for (const auto& [label, count] : counts) support.push_back(label);

  const PartialHistogram noisy =
      BasicHistogram(*inner, support, counts, D.universe_size, source);

  // Interpolation points: supported bins pinned to a uniform preimage of
  // their released count, then the smallest absent labels padded with
  // uniform field values up to n+1 points total.
  std::vector<std::pair<GF2Field::Elem, GF2Field::Elem>> points;
  points.reserve(static_cast<size_t>(spec.n) + 1);
  for (const auto& e : noisy.entries) {
    const BigNat u0 = sampler.SampleSupport(e.count, source);
    points.push_back({field.FromValue(BigNat(e.label) - BigNat(1)),
                      field.FromValue(u0 - BigNat(1))});
  }
  uint64_t candidate = 1;
  size_t support_idx = 0;
  while (points.size() < static_cast<size_t>(spec.n) + 1) {
    while (support_idx < support.size() && support[support_idx] == candidate) {
      ++support_idx;
      ++candidate;
    }
    const BigNat u0 = source.Uniform(d0);
    points.push_back({field.FromValue(BigNat(candidate) - BigNat(1)),
                      field.FromValue(u0 - BigNat(1))});
    ++candidate;
  }

  CompactHistogramRepr repr;
  repr.ell = ell;
  repr.n = spec.n;
  repr.universe_size = D.universe_size;
  repr.mechanism = spec;
  repr.coeffs = field.Interpolate(points);
  return repr;
}

CompactEvaluator::CompactEvaluator(const CompactHistogramRepr& repr)
    : repr_(repr),
      field_(repr.ell),
      sampler_(MakeCompactInner(repr.mechanism), field_.Order()) {
  if (repr.coeffs.size() != static_cast<size_t>(repr.n) + 1) {
    throw std::invalid_argument("CompactEvaluator: coefficient count != n+1");
  }
  if (BigNat(repr.universe_size) > field_.Order()) {
    throw std::invalid_argument("CompactEvaluator: universe exceeds field");
  }
}

int64_t CompactEvaluator::Eval(uint64_t label) const {
  if (label < 1 || label > repr_.universe_size) {
    throw std::invalid_argument("CompactEval: label out of universe");
  }
  const GF2Field::Elem x = field_.FromValue(BigNat(label) - BigNat(1));
  const GF2Field::Elem value = field_.EvalPoly(repr_.coeffs, x);
  const BigNat u0 = field_.ToValue(value) + BigNat(1);
  return sampler_.Eval(u0);
}

int64_t CompactEval(const CompactHistogramRepr& repr, uint64_t label) {
  return CompactEvaluator(repr).Eval(label);
}

std::string SerializeCompactRepr(const CompactHistogramRepr& repr) {
  GF2Field field(repr.ell);
  const size_t width = static_cast<size_t>((field.bits() + 3) / 4);
  std::ostringstream out;
  out << "compact " << repr.ell << ' ' << repr.n << ' ' << repr.universe_size
      << ' ' << repr.mechanism.e_den << ' ' << repr.mechanism.g_den << '\n';
  for (const auto& coeff : repr.coeffs) {
    const std::string hex = field.ToValue(coeff).ToHexLower();
    out << std::string(width - hex.size(), '0') << hex << '\n';
  }
  return out.str();
}

CompactHistogramRepr ParseCompactRepr(std::istream& in) {
  std::string magic;
  CompactHistogramRepr repr;
  if (!(in >> magic >> repr.ell >> repr.n >> repr.universe_size >>
        repr.mechanism.e_den >> repr.mechanism.g_den) ||
      magic != "compact") {
    throw IngestionError("compact repr: malformed header");
  }
  repr.mechanism.n = repr.n;
  GF2Field field(repr.ell);
  for (int64_t i = 0; i <= repr.n; ++i) {
    std::string hex;
    if (!(in >> hex)) {
      throw IngestionError("compact repr: missing coefficient line " +
                           std::to_string(i + 1));
    }
    repr.coeffs.push_back(field.FromValue(BigNat::FromHex(hex)));
  }
  return repr;
}

void WriteCompactReprFile(const std::string& path,
                          const CompactHistogramRepr& repr) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot open output file: " + path);
  out << SerializeCompactRepr(repr);
  if (!out) throw IngestionError("failed writing output file: " + path);
}

CompactHistogramRepr ReadCompactReprFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open repr file: " + path);
  return ParseCompactRepr(in);
}

}  // namespace dphist
