#include "nurs/perm.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace nurs {

Permutation Permutation::identity(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("Permutation: n must be >= 1");
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0u);
  return Permutation(std::move(m));
}

Permutation Permutation::from_one_line(const std::vector<std::uint32_t>& values) {
  const auto n = static_cast<std::uint32_t>(values.size());
  if (n < 1) throw std::invalid_argument("Permutation: n must be >= 1");
  std::vector<std::uint32_t> m(n);
  std::vector<bool> seen(n, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t v = values[i];
    if (v < 1 || v > n || seen[v - 1])
      throw std::invalid_argument("Permutation: one-line form is not a bijection on 1..n");
    seen[v - 1] = true;
    m[i] = v - 1;
  }
  return Permutation(std::move(m));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<std::uint32_t> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::uint32_t v = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
      throw std::invalid_argument("Permutation: bad one-line text");
    vals.push_back(v);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return from_one_line(vals);
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::uint32_t i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += std::to_string(map_[i] + 1);
  }
  return out;
}

Permutation compose(const Permutation& sigma, const Permutation& rho) {
  const std::uint32_t n = sigma.size();
  if (n != rho.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<std::uint32_t> m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[i] = sigma.map_[rho.map_[i]];
  return Permutation(std::move(m));
}

Permutation inverse(const Permutation& sigma) {
  const std::uint32_t n = sigma.size();
  std::vector<std::uint32_t> m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[sigma.map_[i]] = i;
  return Permutation(std::move(m));
}

Permutation power(const Permutation& sigma, std::int64_t k) {
  const std::uint32_t n = sigma.size();
  std::vector<std::uint32_t> out(n);
  std::vector<bool> visited(n, false);
  std::vector<std::uint32_t> cyc;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    cyc.clear();
    for (std::uint32_t x = s; !visited[x]; x = sigma.map_[x]) {
      visited[x] = true;
      cyc.push_back(x);
    }
    const auto len = static_cast<std::int64_t>(cyc.size());
    const auto shift = static_cast<std::size_t>(((k % len) + len) % len);
    for (std::size_t t = 0; t < cyc.size(); ++t)
      out[cyc[t]] = cyc[(t + shift) % cyc.size()];
  }
  return Permutation(std::move(out));
}

CycleStats cycle_stats(const Permutation& sigma) {
  const std::uint32_t n = sigma.size();
  CycleStats st;
  std::vector<bool> visited(n, false);
  st.order = 1;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::vector<std::uint32_t> cyc;
    for (std::uint32_t x = s; !visited[x]; x = sigma[x]) {
      visited[x] = true;
      cyc.push_back(x + 1);
    }
    const auto len = static_cast<std::uint64_t>(cyc.size());
    if (len == 1) ++st.fixed_points;
    const std::uint64_t g = std::gcd(st.order, len);
    const std::uint64_t step = len / g;
    st.order = (st.order > UINT64_MAX / step) ? UINT64_MAX : st.order * step;
    st.cycles.push_back(std::move(cyc));
  }
  st.cycle_count = static_cast<std::uint32_t>(st.cycles.size());
  return st;
}

std::uint32_t cycle_length_of(const Permutation& sigma, std::uint32_t label) {
  if (label < 1 || label > sigma.size())
    throw std::invalid_argument("cycle_length_of: label out of range");
  std::uint32_t len = 1;
  for (std::uint32_t x = sigma[label - 1]; x != label - 1; x = sigma[x]) ++len;
  return len;
}

std::uint32_t lis_length(const Permutation& sigma) {
  std::vector<std::uint32_t> tails;
  tails.reserve(sigma.size());
  for (std::uint32_t i = 0; i < sigma.size(); ++i) {
    const std::uint32_t v = sigma[i];
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end())
      tails.push_back(v);
    else
      *it = v;
  }
  return static_cast<std::uint32_t>(tails.size());
}

namespace {

std::uint64_t merge_count(std::vector<std::uint32_t>& a, std::vector<std::uint32_t>& buf,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      buf[k++] = a[i++];
    } else {
      inv += mid - i;
      buf[k++] = a[j++];
    }
  }
  while (i < mid) buf[k++] = a[i++];
  while (j < hi) buf[k++] = a[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
            buf.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

std::uint64_t inversion_count(const Permutation& sigma) {
  std::vector<std::uint32_t> a = sigma.data();
  std::vector<std::uint32_t> buf(a.size());
  return merge_count(a, buf, 0, a.size());
}

Permutation transposition(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw std::invalid_argument("transposition: bad labels");
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 1u);
  std::swap(m[i - 1], m[j - 1]);
  return Permutation::from_one_line(m);
}

Permutation cycle(std::uint32_t n, const std::vector<std::uint32_t>& labels) {
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 1u);
  for (std::size_t t = 0; t < labels.size(); ++t) {
    const std::uint32_t from = labels[t];
    const std::uint32_t to = labels[(t + 1) % labels.size()];
    if (from < 1 || from > n) throw std::invalid_argument("cycle: bad label");
    m[from - 1] = to;
  }
  return Permutation::from_one_line(m);
}

std::vector<Permutation> enumerate_lex(std::uint32_t n) {
  if (n < 1 || n > 9) throw std::invalid_argument("enumerate_lex: need 1 <= n <= 9");
  std::vector<std::uint32_t> a(n);
  std::iota(a.begin(), a.end(), 1u);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.push_back(Permutation::from_one_line(a));
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

std::size_t lex_rank(const Permutation& sigma) {
  const std::uint32_t n = sigma.size();
  std::size_t rank = 0;
  std::uint64_t fact = factorial(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    fact /= (n - i);
    std::uint32_t smaller = 0;
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (sigma[j] < sigma[i]) ++smaller;
    rank += smaller * fact;
  }
  return rank;
}

std::uint64_t factorial(std::uint32_t n) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace nurs
