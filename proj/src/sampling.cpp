#include "srdsm/sampling.hpp"

#include <cmath>

#include <boost/random/sobol.hpp>

#include "srdsm/csv.hpp"
#include "srdsm/error.hpp"
#include "srdsm/rng.hpp"

namespace srdsm {

DesignMatrix::DesignMatrix(std::size_t n_samples, std::size_t dim, Scheme scheme, std::size_t column)
    : n_(n_samples), dim_(dim), scheme_(scheme), column_(column), values_(n_samples * dim, 0.0) {}

std::vector<double> DesignMatrix::column(std::size_t c) const {
  std::vector<double> out(n_);
  for (std::size_t r = 0; r < n_; ++r) out[r] = (*this)(r, c);
  return out;
}

namespace {

void require_positive(std::size_t n, std::size_t dim, const char* what) {
  if (n == 0) fail(ErrorCode::invalid_argument, std::string(what) + ": n must be >= 1");
  if (dim == 0) fail(ErrorCode::invalid_argument, std::string(what) + ": dim must be >= 1");
}

// (k + u) / n can round up to exactly 1 for the top stratum; keep it inside.
double stratum_point(std::size_t k, double u, std::size_t n) {
  const double v = (static_cast<double>(k) + u) / static_cast<double>(n);
  return v < 1.0 ? v : std::nextafter(1.0, 0.0);
}

}  // namespace

DesignMatrix sample_mc(std::size_t n, std::size_t dim, std::uint64_t seed) {
  require_positive(n, dim, "sample_mc");
  Rng rng(seed);
  DesignMatrix d(n, dim, Scheme::mc);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < dim; ++c) d(r, c) = rng.uniform_open();
  return d;
}

DesignMatrix sample_lhs(std::size_t n, std::size_t dim, std::uint64_t seed) {
  require_positive(n, dim, "sample_lhs");
  Rng rng(seed);
  DesignMatrix d(n, dim, Scheme::lhs);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto perm = rng.permutation(n);
    for (std::size_t r = 0; r < n; ++r) d(r, c) = stratum_point(perm[r], rng.uniform_open(), n);
  }
  return d;
}

DesignMatrix sample_lss(std::size_t n, std::size_t dim, std::uint64_t seed, std::size_t strata_per_dim) {
  require_positive(n, dim, "sample_lss");
  const std::size_t s = strata_per_dim;
  if (s == 0 || n % s != 0)
    fail(ErrorCode::invalid_argument, "sample_lss: n=" + std::to_string(n) +
                                          " not divisible by strata_per_dim=" + std::to_string(s));
  const std::size_t m = n / s;  // fine strata per coarse stratum
  Rng rng(seed);
  DesignMatrix d(n, dim, Scheme::lss);
  const auto order = rng.permutation(n);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto relabel = rng.permutation(s);
    // coarse label of sample k: cyclic shift by block index
    std::vector<std::size_t> coarse(n);
    for (std::size_t k = 0; k < n; ++k) coarse[k] = relabel[(k % s + c * (k / s)) % s];
    // each coarse stratum receives exactly m samples; hand out its fine strata
    std::vector<std::vector<std::size_t>> fine(s);
    for (std::size_t j = 0; j < s; ++j) {
      auto p = rng.permutation(m);
      fine[j].reserve(m);
      for (std::size_t q : p) fine[j].push_back(j * m + q);
    }
    std::vector<std::size_t> used(s, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = coarse[k];
      const std::size_t stratum = fine[j][used[j]++];
      d(order[k], c) = stratum_point(stratum, rng.uniform_open(), n);
    }
  }
  return d;
}

std::size_t default_strata(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "default_strata: n must be >= 1");
  auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (root * root > n) --root;
  for (std::size_t s = root; s >= 1; --s)
    if (n % s == 0) return s;
  return 1;
}

SaltelliDesign saltelli_matrices(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::invalid_argument, "saltelli_matrices: n must be >= 2");
  if (dim == 0) fail(ErrorCode::invalid_argument, "saltelli_matrices: dim must be >= 1");
  // A and B are the two halves of one 2*dim Sobol' sequence under a random
  // Cranley-Patterson shift, which keeps every point inside (0, 1).
  boost::random::sobol engine(2 * dim);
  Rng rng(Rng::derive(seed, 0));
  std::vector<double> shift(2 * dim);
  for (auto& v : shift) v = rng.uniform_open();
  SaltelliDesign design{DesignMatrix(n, dim, Scheme::saltelli_A), DesignMatrix(n, dim, Scheme::saltelli_B), {}};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < 2 * dim; ++c) {
      double u = static_cast<double>(engine() >> 11) * 0x1p-53 + shift[c];
      if (u >= 1.0) u -= 1.0;
      if (u <= 0.0) u = 0x1p-54;
      (c < dim ? design.A(r, c) : design.B(r, c - dim)) = u;
    }
  design.AB.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    DesignMatrix ab(n, dim, Scheme::saltelli_ABi, i);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < dim; ++c) ab(r, c) = (c == i) ? design.B(r, c) : design.A(r, c);
    design.AB.push_back(std::move(ab));
  }
  return design;
}

ParamVector to_physical(std::span<const double> unit_row, const SamplingDistribution& dist) {
  if (unit_row.size() != kParamCount)
    fail(ErrorCode::invalid_argument, "design row has " + std::to_string(unit_row.size()) + " columns, expected 41");
  ParamVector x{};
  for (std::size_t i = 0; i < kParamCount; ++i) x[i] = dist.from_unit(i, unit_row[i]);
  return x;
}

void save_design_csv(const DesignMatrix& design, const SamplingDistribution& dist, bool physical,
                     const std::filesystem::path& path) {
  csv::Table table;
  if (design.dim() == kParamCount) {
    for (const auto& s : catalog().specs()) table.header.push_back(s.name);
  } else {
    for (std::size_t c = 0; c < design.dim(); ++c) table.header.push_back("x" + std::to_string(c + 1));
    if (physical) fail(ErrorCode::invalid_argument, "physical output requires a 41-column design");
  }
  for (std::size_t r = 0; r < design.n_samples(); ++r) {
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < design.dim(); ++c) {
      const double u = design(r, c);
      cells.push_back(csv::format(physical ? dist.from_unit(c, u) : u));
    }
    table.rows.push_back(std::move(cells));
  }
  csv::write(path, table);
}

}  // namespace srdsm
