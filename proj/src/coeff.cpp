#include "greedylb/coeff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace greedylb {

IndexSet::IndexSet(std::initializer_list<Index> idx) : IndexSet(std::vector<Index>(idx)) {}

IndexSet::IndexSet(std::vector<Index> idx) : v_(std::move(idx)) {
  std::sort(v_.begin(), v_.end());
  v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  if (!v_.empty() && v_.front() < 1) throw std::invalid_argument("IndexSet: indices must be positive");
}

IndexSet IndexSet::interval(Index lo, Index hi) {
  IndexSet s;
  for (Index n = lo; n <= hi; ++n) s.v_.push_back(n);
  if (!s.v_.empty() && s.v_.front() < 1) throw std::invalid_argument("IndexSet: indices must be positive");
  return s;
}

bool IndexSet::contains(Index n) const {
  return std::binary_search(v_.begin(), v_.end(), n);
}

IndexSet IndexSet::set_union(const IndexSet& o) const {
  IndexSet r;
  std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
  return r;
}

IndexSet IndexSet::set_intersect(const IndexSet& o) const {
  IndexSet r;
  std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
  return r;
}

IndexSet IndexSet::set_minus(const IndexSet& o) const {
  IndexSet r;
  std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(r.v_));
  return r;
}

bool IndexSet::disjoint_with(const IndexSet& o) const {
  return set_intersect(o).empty();
}

bool IndexSet::entirely_below(const IndexSet& o) const {
  if (empty() || o.empty()) return true;
  return max() < o.min();
}

void IndexSet::insert(Index n) {
  if (n < 1) throw std::invalid_argument("IndexSet: indices must be positive");
  auto it = std::lower_bound(v_.begin(), v_.end(), n);
  if (it == v_.end() || *it != n) v_.insert(it, n);
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) os << ',';
    os << v_[i];
  }
  os << '}';
  return os.str();
}

SignPattern::SignPattern(const IndexSet& domain, const std::vector<int>& signs)
    : domain_(domain), signs_(signs) {
  if (signs_.size() != domain_.size())
    throw std::invalid_argument("SignPattern: sign count must match the domain");
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("SignPattern: signs must be +-1");
  }
}

SignPattern SignPattern::all_ones(const IndexSet& domain) {
  return SignPattern(domain, std::vector<int>(domain.size(), 1));
}

SignPattern SignPattern::alternating(const IndexSet& domain, int first_sign) {
  std::vector<int> s(domain.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (i % 2 == 0) ? first_sign : -first_sign;
  return SignPattern(domain, s);
}

int SignPattern::at(Index n) const {
  const auto& vals = domain_.values();
  auto it = std::lower_bound(vals.begin(), vals.end(), n);
  if (it == vals.end() || *it != n) throw std::out_of_range("SignPattern: index outside domain");
  return signs_[static_cast<std::size_t>(it - vals.begin())];
}

std::string SignPattern::str() const {
  std::ostringstream os;
  const auto& vals = domain_.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) os << ' ';
    os << vals[i] << ':' << (signs_[i] > 0 ? '+' : '-');
  }
  return os.str();
}

CoeffVector CoeffVector::from_entries(std::vector<std::pair<Index, Rat>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  CoeffVector v;
  for (auto& [n, a] : entries) {
    if (n < 1) throw std::invalid_argument("CoeffVector: indices must be positive");
    if (!v.e_.empty() && v.e_.back().first == n)
      throw std::invalid_argument("CoeffVector: duplicate index " + std::to_string(n));
    if (a != 0) v.e_.emplace_back(n, std::move(a));
  }
  return v;
}

CoeffVector CoeffVector::dense(const std::vector<Rat>& prefix) {
  std::vector<std::pair<Index, Rat>> ent;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] != 0) ent.emplace_back(static_cast<Index>(i + 1), prefix[i]);
  }
  return from_entries(std::move(ent));
}

Rat CoeffVector::at(Index n) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), n,
                             [](const auto& p, Index k) { return p.first < k; });
  if (it == e_.end() || it->first != n) return Rat(0);
  return it->second;
}

CoeffVector CoeffVector::operator+(const CoeffVector& o) const {
  CoeffVector r;
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      r.e_.push_back(*a++);
    } else if (a == e_.end() || b->first < a->first) {
      r.e_.push_back(*b++);
    } else {
      Rat s = a->second + b->second;
      if (s != 0) r.e_.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  return r;
}

CoeffVector CoeffVector::operator-() const {
  CoeffVector r(*this);
  for (auto& [n, a] : r.e_) a = -a;
  return r;
}

CoeffVector CoeffVector::operator-(const CoeffVector& o) const { return *this + (-o); }

CoeffVector CoeffVector::scaled(const Rat& t) const {
  if (t == 0) return CoeffVector();
  CoeffVector r(*this);
  for (auto& [n, a] : r.e_) a *= t;
  return r;
}

std::string CoeffVector::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) os << ' ';
    os << e_[i].first << ':' << rat_str(e_[i].second);
  }
  return os.str();
}

std::optional<CoeffVector> CoeffVector::parse(std::string_view text) {
  std::vector<std::pair<Index, Rat>> ent;
  std::istringstream is{std::string(text)};
  std::string tok;
  Index prev = 0;
  while (is >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) return std::nullopt;
    Index n = 0;
    try {
      n = std::stoi(tok.substr(0, colon));
    } catch (...) {
      return std::nullopt;
    }
    if (n <= prev) return std::nullopt;  // strictly increasing
    auto val = rat_parse(tok.substr(colon + 1));
    if (!val) return std::nullopt;
    ent.emplace_back(n, *val);
    prev = n;
  }
  return from_entries(std::move(ent));
}

IndexSet support(const CoeffVector& v) {
  std::vector<Index> idx;
  idx.reserve(v.entries().size());
  for (const auto& [n, a] : v.entries()) idx.push_back(n);
  return IndexSet(std::move(idx));
}

CoeffVector project(const CoeffVector& v, const IndexSet& A) {
  std::vector<std::pair<Index, Rat>> ent;
  for (const auto& [n, a] : v.entries()) {
    if (A.contains(n)) ent.emplace_back(n, a);
  }
  return CoeffVector::from_entries(std::move(ent));
}

CoeffVector initial_projection(const CoeffVector& v, int m) {
  if (m < 0) throw std::invalid_argument("initial_projection: m must be >= 0");
  std::vector<std::pair<Index, Rat>> ent;
  for (const auto& [n, a] : v.entries()) {
    if (n <= m) ent.emplace_back(n, a);
  }
  return CoeffVector::from_entries(std::move(ent));
}

CoeffVector indicator(const IndexSet& A, const SignPattern& eps) {
  if (eps.domain() != A)
    throw std::invalid_argument("indicator: sign pattern domain must equal the index set");
  std::vector<std::pair<Index, Rat>> ent;
  for (Index n : A) ent.emplace_back(n, Rat(eps.at(n)));
  return CoeffVector::from_entries(std::move(ent));
}

CoeffVector indicator(const IndexSet& A) { return indicator(A, SignPattern::all_ones(A)); }

int coeff_sign(const Rat& a) { return a < 0 ? -1 : 1; }

}  // namespace greedylb
