#include "liftlab/subset.hpp"

#include <algorithm>
#include <cctype>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

void check_ground(int n) {
  if (n < 0 || n > kMaxGroundSize) {
    throw InvalidArgument("ground set size " + std::to_string(n) + " outside [0, 63]");
  }
}

}  // namespace

SubsetKey SubsetKey::of(std::initializer_list<int> items) { return of(std::vector<int>(items)); }

SubsetKey SubsetKey::of(const std::vector<int>& items) {
  std::uint64_t m = 0;
  for (int i : items) {
    if (i < 0 || i >= kMaxGroundSize) throw InvalidArgument("item index out of range");
    m |= std::uint64_t{1} << i;
  }
  return SubsetKey(m);
}

std::vector<int> SubsetKey::items() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string to_string(SubsetKey s) {
  std::string out = "[";
  bool first = true;
  for (int i : s.items()) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "]";
}

SubsetKey parse_subset(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw InvalidArgument("subset must look like [0,2], got '" + std::string(text) + "'");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<int> items;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view tok = trim(text.substr(0, comma));
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw InvalidArgument("bad item index in subset '" + std::string(text) + "'");
    }
    items.push_back(std::stoi(std::string(tok)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return SubsetKey::of(items);
}

std::vector<SubsetKey> subsets_canonical(SubsetKey s) {
  std::vector<SubsetKey> out;
  out.reserve(std::size_t{1} << s.size());
  for_each_subset(s, [&](SubsetKey x) { out.push_back(x); });
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

std::vector<SubsetKey> subsets_of_size(int n, int k) {
  check_ground(n);
  std::vector<SubsetKey> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {SubsetKey()};
  std::uint64_t limit = n == 64 ? 0 : (std::uint64_t{1} << n);
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  while (v < limit) {
    out.emplace_back(v);
    // Gosper's hack: next larger integer with the same popcount.
    std::uint64_t c = v & (~v + 1);
    std::uint64_t r = v + c;
    if (r == 0) break;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

SubsetFamily::SubsetFamily(int n, std::vector<SubsetKey> sorted_keys) : n_(n), keys_(std::move(sorted_keys)) {
  bool dense = n <= kMaxDenseGround && (std::size_t{1} << n) <= 64 * keys_.size() + 4096;
  if (dense) {
    dense_.assign(std::size_t{1} << n, -1);
    for (std::size_t i = 0; i < keys_.size(); ++i) dense_[keys_[i].mask()] = static_cast<std::int32_t>(i);
  } else {
    sparse_.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) sparse_.emplace(keys_[i].mask(), static_cast<std::uint32_t>(i));
  }
}

SubsetFamily SubsetFamily::up_to(int n, int t) {
  check_ground(n);
  std::vector<SubsetKey> keys;
  int top = std::min(t, n);
  for (int k = 0; k <= top; ++k) {
    auto layer = subsets_of_size(n, k);
    keys.insert(keys.end(), layer.begin(), layer.end());
  }
  return SubsetFamily(n, std::move(keys));
}

SubsetFamily SubsetFamily::power_set(int n, SubsetKey u) {
  check_ground(n);
  if (!u.is_subset_of(SubsetKey::full(n))) throw InvalidArgument("U is not a subset of the ground set");
  return SubsetFamily(n, subsets_canonical(u));
}

SubsetFamily SubsetFamily::from_keys(int n, std::vector<SubsetKey> keys) {
  check_ground(n);
  SubsetKey full = SubsetKey::full(n);
  for (SubsetKey k : keys) {
    if (!k.is_subset_of(full)) throw InvalidArgument("subset " + to_string(k) + " exceeds ground set");
  }
  std::sort(keys.begin(), keys.end(), CanonicalLess{});
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return SubsetFamily(n, std::move(keys));
}

}  // namespace liftlab
