#pragma once

// Point-set generators for the inverse-discrepancy search.
//
// Spec strings (parse/to_string round-trip through the canonical form):
//   halton                      van der Corput in the j-th prime base, index k = 1..n
//   centered-grid | grid        midpoints of the m^d grid, m = min{m : m^d >= n}, first n in lexicographic order
//   uniform-random:SEED         also random:SEED
//   rank1-lattice:g1,g2,...     also lattice:g1,...; {k g / n}, k = 0..n-1
//   rank1-lattice:korobov=A     also korobov:A; g = (1, A, A^2, ...) mod n
//
// Random points are drawn in chunks of kRandomChunk points; chunk c uses
// Rng(seed, c), so the output does not depend on the thread count.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wlpdisc/core.hpp"
#include "wlpdisc/parallel.hpp"
#include "wlpdisc/random.hpp"

namespace wlpdisc {

enum class GeneratorKind { UniformRandom, CenteredGrid, Halton, Rank1Lattice };

[[nodiscard]] inline std::string_view generator_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::UniformRandom: return "uniform-random";
    case GeneratorKind::CenteredGrid: return "centered-grid";
    case GeneratorKind::Halton: return "halton";
    case GeneratorKind::Rank1Lattice: return "rank1-lattice";
  }
  return "?";
}

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Halton;
  std::optional<std::uint64_t> seed;
  std::vector<std::int64_t> lattice;      ///< explicit generating vector
  std::optional<std::int64_t> korobov;    ///< alternative to `lattice`

  static GeneratorSpec halton() { return {GeneratorKind::Halton, std::nullopt, {}, std::nullopt}; }
  static GeneratorSpec grid() { return {GeneratorKind::CenteredGrid, std::nullopt, {}, std::nullopt}; }
  static GeneratorSpec random(std::uint64_t seed) { return {GeneratorKind::UniformRandom, seed, {}, std::nullopt}; }
  static GeneratorSpec lattice_of(std::vector<std::int64_t> g) {
    return {GeneratorKind::Rank1Lattice, std::nullopt, std::move(g), std::nullopt};
  }
  static GeneratorSpec korobov_of(std::int64_t a) { return {GeneratorKind::Rank1Lattice, std::nullopt, {}, a}; }

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

inline constexpr std::size_t kMaxHaltonDim = 1000;
inline constexpr std::size_t kRandomChunk = 1024;

namespace detail {

template <class T>
[[nodiscard]] T parse_integer(std::string_view s, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

[[nodiscard]] inline GeneratorSpec parse_generator(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto no_argument = [&](GeneratorSpec s) {
    if (colon != std::string_view::npos) throw ParseError("generator '" + std::string(head) + "' takes no argument");
    return s;
  };
  if (head == "halton") return no_argument(GeneratorSpec::halton());
  if (head == "grid" || head == "centered-grid") return no_argument(GeneratorSpec::grid());
  if (head == "random" || head == "uniform-random") {
    if (tail.empty()) throw ParseError("uniform-random needs a seed, e.g. random:42");
    return GeneratorSpec::random(detail::parse_integer<std::uint64_t>(tail, "seed"));
  }
  if (head == "korobov") return GeneratorSpec::korobov_of(detail::parse_integer<std::int64_t>(tail, "Korobov parameter"));
  if (head == "lattice" || head == "rank1-lattice") {
    if (tail.starts_with("korobov=")) {
      return GeneratorSpec::korobov_of(detail::parse_integer<std::int64_t>(tail.substr(8), "Korobov parameter"));
    }
    if (tail.empty()) throw ParseError("rank1-lattice needs a generating vector or korobov=A");
    std::vector<std::int64_t> g;
    std::size_t start = 0;
    for (;;) {
      const auto comma = tail.find(',', start);
      g.push_back(detail::parse_integer<std::int64_t>(tail.substr(start, comma - start), "lattice component"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return GeneratorSpec::lattice_of(std::move(g));
  }
  throw ParseError("unknown generator '" + std::string(text) + "'");
}

/// Comma-separated list; empty entries are rejected.
[[nodiscard]] inline std::vector<GeneratorSpec> parse_generator_list(std::string_view text) {
  // lattice vectors also use commas, so split on ';' when present
  const char sep = text.find(';') != std::string_view::npos ? ';' : ',';
  std::vector<GeneratorSpec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    // with ',' as separator, digits after a lattice item belong to it
    if (sep == ',' && !out.empty() && !item.empty() && (item[0] == '-' || (item[0] >= '0' && item[0] <= '9')) &&
        out.back().kind == GeneratorKind::Rank1Lattice && !out.back().korobov) {
      out.back().lattice.push_back(detail::parse_integer<std::int64_t>(item, "lattice component"));
    } else {
      out.push_back(parse_generator(item));
    }
    start = end + 1;
  }
  if (out.empty()) throw ParseError("empty generator list");
  return out;
}

[[nodiscard]] inline std::string to_string(const GeneratorSpec& s) {
  std::string out(generator_name(s.kind));
  switch (s.kind) {
    case GeneratorKind::UniformRandom:
      out += ":" + std::to_string(s.seed.value_or(0));
      break;
    case GeneratorKind::Rank1Lattice:
      if (s.korobov) {
        out += ":korobov=" + std::to_string(*s.korobov);
      } else {
        out += ":";
        for (std::size_t j = 0; j < s.lattice.size(); ++j) out += (j ? "," : "") + std::to_string(s.lattice[j]);
      }
      break;
    default:
      break;
  }
  return out;
}

/// First `count` primes by sieve.
[[nodiscard]] inline std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  std::size_t limit = 16;
  while (primes.size() < count) {
    limit *= 2;
    std::vector<bool> composite(limit + 1, false);
    primes.clear();
    for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (std::size_t k = i * i; k <= limit; k += i) composite[k] = true;
    }
  }
  return primes;
}

/// sum of the base-b digits of k mirrored about the radix point.
[[nodiscard]] inline double radical_inverse(std::uint64_t k, std::uint32_t base) {
  const double inv = 1.0 / base;
  double scale = inv;
  double r = 0.0;
  while (k > 0) {
    r += static_cast<double>(k % base) * scale;
    k /= base;
    scale *= inv;
  }
  return r;
}

namespace detail {

inline void check_size(std::size_t n, std::size_t d) {
  if (n == 0) throw DomainError("generators need n >= 1");
  if (d == 0) throw DimensionError("generators need d >= 1");
  if (n > (std::size_t{1} << 40) / d) throw CapacityError("point set of " + std::to_string(n) + " x " + std::to_string(d) + " is too large");
}

[[nodiscard]] inline PointSet halton_points(std::size_t n, std::size_t d) {
  if (d > kMaxHaltonDim) throw CapacityError("halton supports d <= 1000 (prime table)");
  const auto primes = first_primes(d);
  std::vector<double> x(n * d);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < d; ++j) x[k * d + j] = radical_inverse(k + 1, primes[j]);
  }
  return PointSet(d, std::move(x));
}

[[nodiscard]] inline PointSet grid_points(std::size_t n, std::size_t d) {
  std::size_t m = 1;
  for (;; ++m) {
    std::size_t cells = 1;
    bool enough = false;
    for (std::size_t j = 0; j < d; ++j) {
      cells *= m;
      if (cells >= n) {
        enough = true;
        break;
      }
    }
    if (enough) break;
  }
  std::vector<double> x(n * d);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < d; ++j) x[k * d + j] = (static_cast<double>(idx[j]) + 0.5) / static_cast<double>(m);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < m) break;
      idx[j] = 0;
    }
  }
  return PointSet(d, std::move(x));
}

[[nodiscard]] inline PointSet lattice_points(const GeneratorSpec& s, std::size_t n, std::size_t d) {
  const auto nn = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> g;
  if (s.korobov) {
    std::int64_t a = ((*s.korobov % nn) + nn) % nn;
    std::int64_t cur = 1 % nn;
    for (std::size_t j = 0; j < d; ++j) {
      g.push_back(cur);
      cur = static_cast<std::int64_t>((static_cast<__int128>(cur) * a) % nn);
    }
  } else {
    if (s.lattice.size() != d) {
      throw DimensionError("lattice generating vector has " + std::to_string(s.lattice.size()) +
                           " components, d = " + std::to_string(d));
    }
    for (auto v : s.lattice) g.push_back(((v % nn) + nn) % nn);
  }
  std::vector<double> x(n * d);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto r = static_cast<std::int64_t>((static_cast<__int128>(k) * g[j]) % nn);
      x[k * d + j] = static_cast<double>(r) / static_cast<double>(n);
    }
  }
  return PointSet(d, std::move(x));
}

[[nodiscard]] inline PointSet random_points(std::uint64_t seed, std::size_t n, std::size_t d, unsigned threads) {
  std::vector<double> x(n * d);
  const std::size_t chunks = (n + kRandomChunk - 1) / kRandomChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(seed, c);
    const std::size_t end = std::min(n, (c + 1) * kRandomChunk);
    for (std::size_t i = c * kRandomChunk * d; i < end * d; ++i) x[i] = rng.uniform();
  });
  return PointSet(d, std::move(x));
}

}  // namespace detail

[[nodiscard]] inline PointSet generate(const GeneratorSpec& spec, std::size_t n, std::size_t d, unsigned threads = 1) {
  detail::check_size(n, d);
  switch (spec.kind) {
    case GeneratorKind::Halton: return detail::halton_points(n, d);
    case GeneratorKind::CenteredGrid: return detail::grid_points(n, d);
    case GeneratorKind::Rank1Lattice:
      if (!spec.korobov && spec.lattice.empty()) throw DomainError("rank1-lattice needs a generating vector or a Korobov parameter");
      return detail::lattice_points(spec, n, d);
    case GeneratorKind::UniformRandom:
      if (!spec.seed) throw DomainError("uniform-random needs a seed");
      return detail::random_points(*spec.seed, n, d, threads);
  }
  throw DomainError("unknown generator kind");
}

}  // namespace wlpdisc
