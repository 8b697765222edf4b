#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace combtrie {

struct InsertReport {
  long leaf_depth = 0;        // depth of the newly placed leaf
  long letters_consumed = 0;  // high-water mark of text positions touched
};

/// Incremental binary suffix trie over one growing text. Suffix i (1-based
/// start position) is inserted by walking its letters; on collision with an
/// existing leaf the branch grows by comparing both suffixes letter by
/// letter until they separate.
///
/// The text is accessed through letter_at(i) (1-based); the trie never
/// copies letters, only suffix start indices. Height, the per-depth
/// internal-node profile and the saturation level are maintained
/// incrementally; recount() recomputes them by traversal for
/// cross-checking. The root counts as the depth-0 internal node.
class SuffixTrie {
 public:
  explicit SuffixTrie(std::function<int(long)> letter_at,
                      long letter_budget = 100'000'000)
      : letter_at_(std::move(letter_at)), letter_budget_(letter_budget) {
    nodes_.push_back(Node{});  // root, depth 0
    depth_profile_.push_back(1);
  }

  /// Inserts suffix n+1. Throws std::runtime_error when two suffixes agree
  /// beyond the letter budget.
  InsertReport insert_next_suffix() {
    const long m = n_ + 1;  // start position of the new suffix
    int32_t cur = 0;
    long depth = 0;
    for (;;) {
      int letter = text(m + depth);
      int32_t slot = nodes_[static_cast<size_t>(cur)].child[letter];
      if (slot == 0) {
        nodes_[static_cast<size_t>(cur)].child[letter] =
            static_cast<int32_t>(-m);
        ++n_;
        return {depth + 1, max_pos_};
      }
      if (slot > 0) {
        cur = slot;
        ++depth;
        continue;
      }
      // Collision with the leaf of suffix j: grow the branch until the two
      // suffixes separate. new_internal may reallocate nodes_, so nodes_ is
      // re-indexed after every call.
      const long j = -static_cast<long>(slot);
      nodes_[static_cast<size_t>(cur)].child[letter] = new_internal(depth + 1);
      cur = nodes_.back().self;
      ++depth;
      while (text(j + depth) == text(m + depth)) {
        int letter2 = text(m + depth);
        nodes_[static_cast<size_t>(cur)].child[letter2] =
            new_internal(depth + 1);
        cur = nodes_.back().self;
        ++depth;
      }
      nodes_[static_cast<size_t>(cur)].child[text(j + depth)] =
          static_cast<int32_t>(-j);
      nodes_[static_cast<size_t>(cur)].child[text(m + depth)] =
          static_cast<int32_t>(-m);
      ++n_;
      return {depth + 1, max_pos_};
    }
  }

  long size() const { return n_; }
  long height() const { return height_; }
  long saturation() const { return saturation_; }
  long letters_consumed() const { return max_pos_; }
  const std::vector<long>& depth_profile() const { return depth_profile_; }

  /// X_n(s): depth of the deepest internal node on the path spelled by
  /// s_letter(1), s_letter(2), ... (0 when s's first letter is not an
  /// internal child of the root).
  long probe_x(const std::function<int(long)>& s_letter) const {
    int32_t cur = 0;
    long k = 0;
    for (;;) {
      int32_t c = nodes_[static_cast<size_t>(cur)].child[s_letter(k + 1)];
      if (c <= 0) return k;
      cur = c;
      ++k;
    }
  }

  struct Recount {
    long height = 0;
    long saturation = 0;
    std::vector<long> profile;
    long min_escape_depth = 0;  // min over right-infinite s of X_n(s)
    long leaves = 0;
  };

  /// From-scratch traversal; the incremental statistics must agree with it.
  Recount recount() const {
    Recount rc;
    rc.profile.assign(depth_profile_.size(), 0);
    rc.min_escape_depth = std::numeric_limits<long>::max();
    walk(0, 0, rc);
    rc.saturation = 0;
    while (rc.saturation + 1 < static_cast<long>(rc.profile.size()) &&
           rc.saturation < 62 &&
           rc.profile[static_cast<size_t>(rc.saturation + 1)] ==
               (1L << (rc.saturation + 1)))
      ++rc.saturation;
    return rc;
  }

  /// Leaf paths as 0/1 strings, paired with the suffix index each holds.
  std::vector<std::pair<std::string, long>> leaf_paths() const {
    std::vector<std::pair<std::string, long>> out;
    std::string path;
    collect_leaves(0, path, out);
    return out;
  }

 private:
  struct Node {
    int32_t child[2] = {0, 0};
    int32_t self = 0;  // own index; spares index arithmetic at growth time
  };

  int text(long pos) {
    if (pos > letter_budget_)
      throw std::runtime_error("suffix trie: letter budget exceeded");
    if (pos > max_pos_) max_pos_ = pos;
    return letter_at_(pos);
  }

  int32_t new_internal(long depth) {
    Node node;
    node.self = static_cast<int32_t>(nodes_.size());
    nodes_.push_back(node);
    if (static_cast<long>(depth_profile_.size()) <= depth)
      depth_profile_.resize(static_cast<size_t>(depth) + 1, 0);
    ++depth_profile_[static_cast<size_t>(depth)];
    if (depth > height_) height_ = depth;
    while (saturation_ + 1 < static_cast<long>(depth_profile_.size()) &&
           saturation_ < 62 &&
           depth_profile_[static_cast<size_t>(saturation_ + 1)] ==
               (1L << (saturation_ + 1)))
      ++saturation_;
    return nodes_.back().self;
  }

  void walk(int32_t idx, long depth, Recount& rc) const {
    if (static_cast<long>(rc.profile.size()) <= depth)
      rc.profile.resize(static_cast<size_t>(depth) + 1, 0);
    ++rc.profile[static_cast<size_t>(depth)];
    if (depth > rc.height) rc.height = depth;
    for (int letter = 0; letter < 2; ++letter) {
      int32_t c = nodes_[static_cast<size_t>(idx)].child[letter];
      if (c > 0) {
        walk(c, depth + 1, rc);
      } else {
        if (c < 0) ++rc.leaves;
        // a non-internal child is an escape: any s spelling this path then
        // this letter has X_n(s) = depth
        if (depth < rc.min_escape_depth) rc.min_escape_depth = depth;
      }
    }
  }

  void collect_leaves(int32_t idx, std::string& path,
                      std::vector<std::pair<std::string, long>>& out) const {
    for (int letter = 0; letter < 2; ++letter) {
      int32_t c = nodes_[static_cast<size_t>(idx)].child[letter];
      if (c == 0) continue;
      path.push_back(letter ? '1' : '0');
      if (c > 0)
        collect_leaves(c, path, out);
      else
        out.emplace_back(path, -static_cast<long>(c));
      path.pop_back();
    }
  }

  std::function<int(long)> letter_at_;
  long letter_budget_;
  std::vector<Node> nodes_;
  std::vector<long> depth_profile_;  // internal nodes per depth
  long n_ = 0;
  long height_ = 0;
  long saturation_ = 0;
  long max_pos_ = 0;
};

}  // namespace combtrie
