#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greedylb/rational.hpp"

namespace greedylb {

using Index = int;

/// Finite, strictly increasing set of positive integer indices.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<Index> idx);
  explicit IndexSet(std::vector<Index> idx);  // sorts and dedups

  static IndexSet interval(Index lo, Index hi);  // {lo, ..., hi}, empty if hi < lo

  bool contains(Index n) const;
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Index min() const { return v_.front(); }
  Index max() const { return v_.back(); }

  IndexSet set_union(const IndexSet& o) const;
  IndexSet set_intersect(const IndexSet& o) const;
  IndexSet set_minus(const IndexSet& o) const;
  bool disjoint_with(const IndexSet& o) const;
  /// A < B: every element of *this below every element of o (vacuous if either empty).
  bool entirely_below(const IndexSet& o) const;

  void insert(Index n);

  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Index>& values() const { return v_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.v_ <=> b.v_; }

  std::string str() const;

 private:
  std::vector<Index> v_;
};

/// Signs +-1 assigned to exactly the elements of an IndexSet.
class SignPattern {
 public:
  SignPattern() = default;
  SignPattern(const IndexSet& domain, const std::vector<int>& signs);  // signs aligned with domain order
  static SignPattern all_ones(const IndexSet& domain);
  static SignPattern alternating(const IndexSet& domain, int first_sign);

  const IndexSet& domain() const { return domain_; }
  int at(Index n) const;  // throws if n outside the domain

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

  std::string str() const;

 private:
  IndexSet domain_;
  std::vector<int> signs_;
};

/// Finitely supported coefficient sequence f = sum a_n x_n; no stored zeros.
class CoeffVector {
 public:
  CoeffVector() = default;
  /// Entries (index, value); indices must be positive; zeros are stripped.
  static CoeffVector from_entries(std::vector<std::pair<Index, Rat>> entries);
  /// Dense prefix (a_1, a_2, ..., a_k).
  static CoeffVector dense(const std::vector<Rat>& prefix);

  bool is_zero() const { return e_.empty(); }
  std::size_t support_size() const { return e_.size(); }
  Rat at(Index n) const;  // 0 off support
  const std::vector<std::pair<Index, Rat>>& entries() const { return e_; }
  Index max_index() const { return e_.empty() ? 0 : e_.back().first; }

  CoeffVector operator+(const CoeffVector& o) const;
  CoeffVector operator-(const CoeffVector& o) const;
  CoeffVector operator-() const;
  CoeffVector scaled(const Rat& t) const;

  friend bool operator==(const CoeffVector&, const CoeffVector&) = default;
  friend auto operator<=>(const CoeffVector& a, const CoeffVector& b) { return a.e_ <=> b.e_; }

  /// Round-trip text form: whitespace-separated index:value pairs, increasing indices.
  std::string str() const;
  static std::optional<CoeffVector> parse(std::string_view text);

 private:
  std::vector<std::pair<Index, Rat>> e_;  // sorted by index
};

IndexSet support(const CoeffVector& v);
CoeffVector project(const CoeffVector& v, const IndexSet& A);
CoeffVector initial_projection(const CoeffVector& v, int m);
CoeffVector indicator(const IndexSet& A, const SignPattern& eps);
CoeffVector indicator(const IndexSet& A);  // all-ones

/// sign(a) with the convention sign(0) = 1.
int coeff_sign(const Rat& a);

}  // namespace greedylb
