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

#ifndef DPHIST_ORDER_STAT_SET_HPP_
#define DPHIST_ORDER_STAT_SET_HPP_

#include <cstdint>
#include <vector>

namespace dphist {

// Ordered set of labels with rank queries: insert and CountLessEqual run in
// logarithmic time (expected; treap with deterministic hash priorities, so
// a given key set always produces the same shape). Duplicate inserts are
// no-ops.
class OrderStatSet {
 public:
  void Insert(uint64_t key);
  bool Contains(uint64_t key) const;
  // |{x in set : x <= key}|.
  size_t CountLessEqual(uint64_t key) const;
  size_t size() const { return root_ == kNil ? 0 : nodes_[root_].size; }

 private:
  static constexpr uint32_t kNil = 0xffffffff;

  struct Node {
    uint64_t key;
    uint64_t priority;
    uint32_t left = kNil;
    uint32_t right = kNil;
    uint32_t size = 1;
  };

  uint32_t SizeOf(uint32_t node) const {
    return node == kNil ? 0 : nodes_[node].size;
  }
  void Pull(uint32_t node) {
    nodes_[node].size = 1 + SizeOf(nodes_[node].left) + SizeOf(nodes_[node].right);
  }
  // Split by key into (<= key, > key).
  void Split(uint32_t node, uint64_t key, uint32_t* lo, uint32_t* hi);
  uint32_t Merge(uint32_t lo, uint32_t hi);

  std::vector<Node> nodes_;
  uint32_t root_ = kNil;
};

}  // namespace dphist

#endif  // DPHIST_ORDER_STAT_SET_HPP_
