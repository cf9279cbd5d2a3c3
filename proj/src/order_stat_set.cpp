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

#include "dphist/order_stat_set.hpp"

namespace dphist {

namespace {

// splitmix64 finalizer; decouples treap priorities from key order.
uint64_t MixPriority(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void OrderStatSet::Split(uint32_t node, uint64_t key, uint32_t* lo,
                         uint32_t* hi) {
  if (node == kNil) {
    *lo = kNil;
    *hi = kNil;
    return;
  }
  if (nodes_[node].key <= key) {
    Split(nodes_[node].right, key, &nodes_[node].right, hi);
    *lo = node;
  } else {
    Split(nodes_[node].left, key, lo, &nodes_[node].left);
    *hi = node;
  }
  Pull(node);
}

uint32_t OrderStatSet::Merge(uint32_t lo, uint32_t hi) {
  if (lo == kNil) return hi;
  if (hi == kNil) return lo;
  if (nodes_[lo].priority >= nodes_[hi].priority) {
    nodes_[lo].right = Merge(nodes_[lo].right, hi);
    Pull(lo);
    return lo;
  }
  nodes_[hi].left = Merge(lo, nodes_[hi].left);
  Pull(hi);
  return hi;
}

void OrderStatSet::Insert(uint64_t key) {
  if (Contains(key)) return;
  Node fresh;
  fresh.key = key;
  fresh.priority = MixPriority(key);
  nodes_.push_back(fresh);
  const uint32_t idx = static_cast<uint32_t>(nodes_.size() - 1);
  uint32_t lo, hi;
  Split(root_, key, &lo, &hi);
  root_ = Merge(Merge(lo, idx), hi);
}

bool OrderStatSet::Contains(uint64_t key) const {
  uint32_t node = root_;
  while (node != kNil) {
    if (nodes_[node].key == key) return true;
    node = key < nodes_[node].key ? nodes_[node].left : nodes_[node].right;
  }
  return false;
}

size_t OrderStatSet::CountLessEqual(uint64_t key) const {
  size_t count = 0;
  uint32_t node = root_;
  while (node != kNil) {
    if (nodes_[node].key <= key) {
      count += 1 + SizeOf(nodes_[node].left);
      node = nodes_[node].right;
    } else {
      node = nodes_[node].left;
    }
  }
  return count;
}

}  // namespace dphist
