#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ricci/catalogue.hpp"
#include "ricci/expansions.hpp"

namespace ricci {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  double tol_scale = 1.0;
  int points = 12;          // sample points per chart entry
  int planes = 24;          // random planes per point and dimension
  bool expansions = true;
  std::uint64_t seed = kDefaultSeed;
  ExpansionOptions expansion;
};

struct VerifyReport {
  std::string manifold;
  std::vector<Check> checks;
  bool all_pass() const;
};

/// Runs the invariant suite on one catalogue entry. Each check keeps the
/// worst residual over its samples.
VerifyReport verify_entry(const CatalogueEntry& entry, const VerifyOptions& options = {});

/// Haar-random orthogonal matrix.
Matrix random_orthogonal(int n, std::mt19937_64& rng);

/// Random d-plane frame at x in the coordinates of entry.curvature(x).
SubspaceFrame random_plane(const CatalogueEntry& entry, const Vector& x, int d, std::mt19937_64& rng);

}  // namespace ricci
