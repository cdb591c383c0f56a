#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace liftlab {

inline constexpr int kMaxGroundSize = 63;
// Full power-set enumeration (shift, P(V)-indexed vectors) stops here.
inline constexpr int kMaxDenseGround = 20;

// A subset of the ground set V = {0, ..., n-1}, stored as a bitmask.
class SubsetKey {
 public:
  constexpr SubsetKey() = default;
  constexpr explicit SubsetKey(std::uint64_t mask) : mask_(mask) {}

  static SubsetKey of(std::initializer_list<int> items);
  static SubsetKey of(const std::vector<int>& items);
  static constexpr SubsetKey singleton(int i) { return SubsetKey(std::uint64_t{1} << i); }
  static constexpr SubsetKey full(int n) {
    return SubsetKey(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int i) const { return (mask_ >> i) & 1U; }
  constexpr bool is_subset_of(SubsetKey other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(SubsetKey other) const { return (mask_ & other.mask_) != 0; }
  constexpr int max_item() const { return mask_ == 0 ? -1 : 63 - std::countl_zero(mask_); }

  constexpr SubsetKey operator|(SubsetKey o) const { return SubsetKey(mask_ | o.mask_); }
  constexpr SubsetKey operator&(SubsetKey o) const { return SubsetKey(mask_ & o.mask_); }
  constexpr SubsetKey minus(SubsetKey o) const { return SubsetKey(mask_ & ~o.mask_); }
  constexpr SubsetKey with(int i) const { return SubsetKey(mask_ | (std::uint64_t{1} << i)); }

  std::vector<int> items() const;

  constexpr bool operator==(const SubsetKey&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

// Canonical order: cardinality first, then numeric bitmask.
constexpr bool canonical_less(SubsetKey a, SubsetKey b) {
  return a.size() != b.size() ? a.size() < b.size() : a.mask() < b.mask();
}

struct CanonicalLess {
  constexpr bool operator()(SubsetKey a, SubsetKey b) const { return canonical_less(a, b); }
};

// "[0,2]" for {0, 2}; "[]" for the empty set.
std::string to_string(SubsetKey s);
SubsetKey parse_subset(std::string_view text);

// Visits every subset of s, including the empty set and s itself.
template <class F>
void for_each_subset(SubsetKey s, F&& f) {
  std::uint64_t full = s.mask();
  std::uint64_t sub = full;
  while (true) {
    f(SubsetKey(sub));
    if (sub == 0) break;
    sub = (sub - 1) & full;
  }
}

// Subsets of s in canonical order.
std::vector<SubsetKey> subsets_canonical(SubsetKey s);

// Subsets of {0..n-1} of cardinality exactly k, in increasing bitmask order.
std::vector<SubsetKey> subsets_of_size(int n, int k);

std::uint64_t binomial(int n, int k);

// An ordered, duplicate-free family of subsets with O(1) index lookup.
class SubsetFamily {
 public:
  SubsetFamily() = default;

  // P_t(V): every subset of {0..n-1} with at most t elements.
  static SubsetFamily up_to(int n, int t);
  // P(U) for U a subset of {0..n-1}.
  static SubsetFamily power_set(int n, SubsetKey u);
  // Arbitrary keys; duplicates are dropped and the result sorted canonically.
  static SubsetFamily from_keys(int n, std::vector<SubsetKey> keys);

  int ground_size() const { return n_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  SubsetKey operator[](std::size_t i) const { return keys_[i]; }
  const std::vector<SubsetKey>& keys() const { return keys_; }
  auto begin() const { return keys_.begin(); }
  auto end() const { return keys_.end(); }

  std::optional<std::size_t> index_of(SubsetKey s) const {
    if (!dense_.empty()) {
      if (s.mask() >= dense_.size()) return std::nullopt;
      std::int32_t idx = dense_[s.mask()];
      if (idx < 0) return std::nullopt;
      return static_cast<std::size_t>(idx);
    }
    auto it = sparse_.find(s.mask());
    if (it == sparse_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(SubsetKey s) const { return index_of(s).has_value(); }
  int max_cardinality() const { return keys_.empty() ? -1 : keys_.back().size(); }

  bool operator==(const SubsetFamily& other) const { return n_ == other.n_ && keys_ == other.keys_; }

 private:
  SubsetFamily(int n, std::vector<SubsetKey> sorted_keys);

  int n_ = 0;
  std::vector<SubsetKey> keys_;
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

using FamilyPtr = std::shared_ptr<const SubsetFamily>;

inline FamilyPtr make_family(SubsetFamily f) { return std::make_shared<const SubsetFamily>(std::move(f)); }

}  // namespace liftlab
