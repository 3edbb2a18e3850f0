#include "latfm/fm_count.hpp"

#include <algorithm>
#include <map>

#include "latfm/error.hpp"

namespace latfm {

PolarizationDegree::PolarizationDegree(std::uint64_t d) : d_(d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "polarization half-degree d must be positive");
}

PolarizationDegree PolarizationDegree::from_degree(std::uint64_t two_d) {
  if (two_d < 2 || two_d % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "degree 2d must be a positive even integer, got " + std::to_string(two_d));
  return PolarizationDegree(two_d / 2);
}

std::vector<ModuleIsometry> HodgeActionImage::on(const FiniteQuadraticModule& a) const {
  std::vector<ModuleIsometry> out;
  for (const auto& k : scalars) {
    ModuleIsometry f = scalar_isometry(a, k);
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

unsigned distinct_prime_count(std::uint64_t d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be positive");
  if (d == 1) return 1;
  return static_cast<unsigned>(factorize(d).size());
}

std::uint64_t fm_count_rho1(const PolarizationDegree& d) {
  return std::uint64_t{1} << (distinct_prime_count(d.d()) - 1);
}

std::uint64_t fm_count_rho1_via_cosets(const PolarizationDegree& d) {
  const Integer two_d = static_cast<unsigned long>(d.degree());
  const FiniteQuadraticModule a = discriminant_module(rank_one(two_d));
  // A_⟨2d⟩ is cyclic of order 2d generated by h/2d; its isometries are the
  // units α with α² ≡ 1 (mod 4d).
  std::vector<ModuleIsometry> full;
  for (const auto& alpha : units_with_square_one(two_d)) full.push_back(scalar_isometry(a, alpha));
  // O(⟨2d⟩) = {±1} acts on A by ±id.
  std::vector<ModuleIsometry> lattice_image;
  for (long sign : {1L, -1L}) {
    IntMatrix m(1, 1);
    m(0, 0) = sign;
    ModuleIsometry f = induced_isometry(a, m);
    if (std::find(lattice_image.begin(), lattice_image.end(), f) == lattice_image.end())
      lattice_image.push_back(std::move(f));
  }
  const std::vector<ModuleIsometry> g_image = HodgeActionImage::plus_minus_identity().on(a);
  return double_coset_count(lattice_image, full, g_image);
}

std::vector<ModuleIsometry> generated_subgroup(const FiniteQuadraticModule& a,
                                               const std::vector<ModuleIsometry>& generators) {
  std::map<std::vector<Integer>, ModuleIsometry> seen;
  std::vector<ModuleIsometry> frontier{identity_isometry(a)};
  seen.emplace(frontier.front().matrix_key(), frontier.front());
  while (!frontier.empty()) {
    std::vector<ModuleIsometry> next;
    for (const auto& f : frontier)
      for (const auto& g : generators) {
        ModuleIsometry h = g.compose(f);
        if (seen.emplace(h.matrix_key(), h).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  std::vector<ModuleIsometry> out;
  for (auto& [key, f] : seen) out.push_back(f);
  return out;
}

GenusSumReport fm_count_genus_sum(const std::vector<Lattice>& genus_members, const HodgeActionImage& g_image,
                                  const SearchBudget& budget) {
  GenusSumReport report;
  report.entry_bound = budget.entry_bound;
  for (const auto& s : genus_members) {
    if (s.rank() > 2)
      throw Error(ErrorCode::RankUnsupported, "O(S) enumeration is only supported up to rank 2");
    const FiniteQuadraticModule a = discriminant_module(s);
    const std::vector<ModuleIsometry> full = orthogonal_group_of_module(a);
    const IsometryEnumeration autos = enumerate_isometries_bounded(s, s, budget);
    report.saturated_within_budget = report.saturated_within_budget && autos.complete;
    std::vector<ModuleIsometry> images;
    for (const auto& w : autos.witnesses) images.push_back(induced_isometry(a, w.matrix));
    const std::vector<ModuleIsometry> left = generated_subgroup(a, images);
    const std::vector<ModuleIsometry> right = generated_subgroup(a, g_image.on(a));
    const std::size_t c = double_coset_count(left, full, right);
    report.per_member.push_back(c);
    report.count += c;
  }
  return report;
}

}  // namespace latfm
