#include "nurs/direction.hpp"

#include <charconv>
#include <map>
#include <numeric>
#include <stdexcept>

namespace nurs {

namespace {

constexpr std::uint32_t kShiftableRetryCap = 10000;

bool all_cycles_odd(const Permutation& h) {
  const std::uint32_t n = h.size();
  std::vector<bool> visited(n, false);
  for (std::uint32_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::uint32_t len = 0;
    for (std::uint32_t x = s; !visited[x]; x = h[x]) {
      visited[x] = true;
      ++len;
    }
    if (len % 2 == 0) return false;
  }
  return true;
}

// Decode a single uniform draw into the pair (i, j), i < j, 1-based.
std::pair<std::uint32_t, std::uint32_t> draw_pair(Rng& rng, std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("direction: n >= 2 required for pair draws");
  std::uint64_t idx = rng.uniform_below(static_cast<std::uint64_t>(n) * (n - 1) / 2);
  for (std::uint32_t i = 1; i < n; ++i) {
    const std::uint64_t row = n - i;
    if (idx < row) return {i, static_cast<std::uint32_t>(i + 1 + idx)};
    idx -= row;
  }
  throw std::logic_error("draw_pair: unreachable");
}

std::uint32_t parse_param(std::string_view spec, std::size_t colon) {
  std::uint32_t v = 0;
  const char* first = spec.data() + colon + 1;
  const char* last = spec.data() + spec.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last)
    throw std::invalid_argument("direction spec: bad parameter in '" + std::string(spec) + "'");
  return v;
}

}  // namespace

DirectionLaw DirectionLaw::parse(std::string_view spec) {
  if (spec == "uniform") return uniform();
  if (spec == "shiftable") return shiftable();
  if (spec == "transposition") return bare_transposition();
  if (spec.starts_with("block:")) return block_shuffle(parse_param(spec, 5));
  if (spec.starts_with("local:")) return local_cycle(parse_param(spec, 5));
  throw std::invalid_argument("unknown direction spec: " + std::string(spec));
}

std::string DirectionLaw::to_string() const {
  switch (kind) {
    case Kind::UniformSn: return "uniform";
    case Kind::BlockShuffle: return "block:" + std::to_string(param);
    case Kind::LocalCycle: return "local:" + std::to_string(param);
    case Kind::Shiftable: return "shiftable";
    case Kind::BareTransposition: return "transposition";
  }
  throw std::logic_error("bad DirectionLaw kind");
}

Permutation DirectionLaw::sample(Rng& rng, std::uint32_t n) const {
  switch (kind) {
    case Kind::UniformSn: return sample_uniform(rng, n);
    case Kind::BlockShuffle: return sample_block_shuffle(rng, n, param);
    case Kind::LocalCycle: return sample_local_cycle(rng, n, param);
    case Kind::Shiftable: return sample_shiftable(rng, n).eta;
    case Kind::BareTransposition: return sample_bare_transposition(rng, n);
  }
  throw std::logic_error("bad DirectionLaw kind");
}

bool DirectionLaw::inversion_symmetric() const {
  switch (kind) {
    case Kind::UniformSn:
    case Kind::BlockShuffle:
    case Kind::Shiftable:
    case Kind::BareTransposition:
      return true;
    case Kind::LocalCycle:
      return param == 2;  // longer consecutive cycles are one-directional
  }
  throw std::logic_error("bad DirectionLaw kind");
}

Permutation sample_uniform(Rng& rng, std::uint32_t n) { return fisher_yates(rng, n); }

BlockShuffleDraw sample_block_shuffle_detail(Rng& rng, std::uint32_t n, std::uint32_t block) {
  if (block < 2 || block > n)
    throw std::invalid_argument("block shuffle: 2 <= B <= n required");
  const auto offset = static_cast<std::uint32_t>(rng.uniform_below(block));
  BlockShuffleDraw draw;
  draw.offset = offset;
  std::vector<std::uint32_t> map(n);  // 0-based images
  for (std::uint32_t lo = 0; lo < n; lo += block) {
    const std::uint32_t len = std::min(block, n - lo);
    const Permutation pi = fisher_yates(rng, len);
    std::vector<std::uint32_t> labels(len);
    for (std::uint32_t s = 0; s < len; ++s) {
      const std::uint32_t src = (lo + s + offset) % n;       // original 0-based
      const std::uint32_t dst = (lo + pi[s] + offset) % n;   // image under rot o Pi o rot^-1
      map[src] = dst;
      labels[s] = src + 1;
    }
    draw.blocks.push_back(std::move(labels));
  }
  for (auto& v : map) ++v;
  draw.rho = Permutation::from_one_line(map);
  return draw;
}

Permutation sample_block_shuffle(Rng& rng, std::uint32_t n, std::uint32_t block) {
  return sample_block_shuffle_detail(rng, n, block).rho;
}

Permutation local_cycle_at(std::uint32_t n, std::uint32_t ell, std::uint32_t start) {
  if (ell < 2 || ell > n) throw std::invalid_argument("local cycle: 2 <= ell <= n required");
  std::vector<std::uint32_t> labels(ell);
  for (std::uint32_t r = 0; r < ell; ++r) labels[r] = 1 + (start - 1 + r) % n;
  return cycle(n, labels);
}

Permutation sample_local_cycle(Rng& rng, std::uint32_t n, std::uint32_t ell) {
  if (ell < 2 || ell > n) throw std::invalid_argument("local cycle: 2 <= ell <= n required");
  const auto start = static_cast<std::uint32_t>(1 + rng.uniform_below(n));
  return local_cycle_at(n, ell, start);
}

ShiftableDraw sample_shiftable(Rng& rng, std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("shiftable: n >= 2 required");
  ShiftableDraw draw;
  std::tie(draw.i, draw.j) = draw_pair(rng, n);

  std::vector<std::uint32_t> complement;
  complement.reserve(n - 2);
  for (std::uint32_t v = 1; v <= n; ++v)
    if (v != draw.i && v != draw.j) complement.push_back(v);

  std::vector<std::uint32_t> map(n);
  std::iota(map.begin(), map.end(), 1u);
  std::swap(map[draw.i - 1], map[draw.j - 1]);

  const auto m = static_cast<std::uint32_t>(complement.size());
  if (m > 0) {
    for (;;) {
      const Permutation h = fisher_yates(rng, m);
      if (all_cycles_odd(h)) {
        for (std::uint32_t k = 0; k < m; ++k) map[complement[k] - 1] = complement[h[k]];
        break;
      }
      if (++draw.rejections >= kShiftableRetryCap)
        throw std::runtime_error("shiftable: odd-cycle rejection cap exhausted");
    }
  }
  draw.eta = Permutation::from_one_line(map);
  return draw;
}

Permutation sample_bare_transposition(Rng& rng, std::uint32_t n) {
  const auto [i, j] = draw_pair(rng, n);
  return transposition(n, i, j);
}

std::vector<Permutation> omega_ij_enumerate(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  if (n > 8) throw std::invalid_argument("omega_ij_enumerate: n <= 8 required");
  if (i < 1 || j <= i || j > n) throw std::invalid_argument("omega_ij_enumerate: need 1 <= i < j <= n");
  std::vector<std::uint32_t> complement;
  for (std::uint32_t v = 1; v <= n; ++v)
    if (v != i && v != j) complement.push_back(v);
  const auto m = static_cast<std::uint32_t>(complement.size());

  std::vector<Permutation> out;
  const Permutation tau = transposition(n, i, j);
  if (m == 0) {
    out.push_back(tau);
    return out;
  }
  for (const Permutation& h : enumerate_lex(m)) {
    if (!all_cycles_odd(h)) continue;
    std::vector<std::uint32_t> map = tau.data();
    for (auto& v : map) ++v;
    for (std::uint32_t k = 0; k < m; ++k) map[complement[k] - 1] = complement[h[k]];
    out.push_back(Permutation::from_one_line(map));
  }
  return out;
}

std::vector<SupportAtom> enumerate_support(const DirectionLaw& law, std::uint32_t n) {
  std::map<Permutation, double> atoms;
  switch (law.kind) {
    case DirectionLaw::Kind::UniformSn: {
      if (n > 6) throw std::invalid_argument("enumerate_support: uniform law needs n <= 6");
      const double p = 1.0 / static_cast<double>(factorial(n));
      for (const Permutation& rho : enumerate_lex(n)) atoms[rho] += p;
      break;
    }
    case DirectionLaw::Kind::BareTransposition: {
      if (n < 2 || n > 8)
        throw std::invalid_argument("enumerate_support: transposition law needs 2 <= n <= 8");
      const double p = 2.0 / (static_cast<double>(n) * (n - 1));
      for (std::uint32_t i = 1; i <= n; ++i)
        for (std::uint32_t j = i + 1; j <= n; ++j) atoms[transposition(n, i, j)] += p;
      break;
    }
    case DirectionLaw::Kind::LocalCycle: {
      if (law.param < 2 || law.param > n || n > 10000)
        throw std::invalid_argument("enumerate_support: bad local cycle parameters");
      const double p = 1.0 / static_cast<double>(n);
      for (std::uint32_t start = 1; start <= n; ++start)
        atoms[local_cycle_at(n, law.param, start)] += p;
      break;
    }
    case DirectionLaw::Kind::Shiftable: {
      if (n < 2 || n > 6)
        throw std::invalid_argument("enumerate_support: shiftable law needs 2 <= n <= 6");
      const double pair_p = 2.0 / (static_cast<double>(n) * (n - 1));
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t j = i + 1; j <= n; ++j) {
          const auto omega = omega_ij_enumerate(n, i, j);
          for (const Permutation& eta : omega)
            atoms[eta] += pair_p / static_cast<double>(omega.size());
        }
      }
      break;
    }
    case DirectionLaw::Kind::BlockShuffle:
      throw std::invalid_argument("enumerate_support: block shuffle is not enumerable");
  }
  std::vector<SupportAtom> out;
  out.reserve(atoms.size());
  for (auto& [rho, p] : atoms) out.push_back({rho, p});
  return out;
}

}  // namespace nurs
