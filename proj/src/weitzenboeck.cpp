#include "ricci/weitzenboeck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ricci/curvature.hpp"
#include "ricci/errors.hpp"
#include "ricci/parallel.hpp"

namespace ricci {

namespace {

bool near_identity(const Matrix& g, double tol) {
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

WeitzenboeckMatrix weitz_matrix(const AlgebraicCurvature& R, int d) {
  const int n = R.dim();
  if (d < 1 || d > n - 1)
    throw GeometryError(ErrorCode::DimensionMismatch, "weitz_matrix needs 1 <= d <= n-1");
  if (n > kMaxWeitzenboeckDim)
    throw GeometryError(ErrorCode::DimensionMismatch, "dense Weitzenböck matrix limited to n <= 12");
  if (!near_identity(R.frame_metric, 1e-8))
    throw GeometryError(ErrorCode::FrameMismatch, "Weitzenböck matrix needs an orthonormal frame");

  const MultiIndexBasis basis(n, d);
  const Matrix ric = R.ricci();
  WeitzenboeckMatrix W{n, d, Matrix::Zero(basis.size(), basis.size())};

  for (int row = 0; row < basis.size(); ++row) {
    const MultiIndex& I = basis[row];
    // Ricci part: one slot replaced.
    for (int s = 0; s < d; ++s)
      for (int j = 0; j < n; ++j) {
        if (ric(I[s], j) == 0.0) continue;
        MultiIndex t = I;
        t[s] = j;
        if (auto sorted = sort_with_parity(std::move(t)))
          W.entries(row, basis.position(sorted->sorted)) += sorted->sign * ric(I[s], j);
      }
    // Riemann part: two slots replaced.
    for (int s = 0; s < d; ++s)
      for (int t = s + 1; t < d; ++t)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const double r = R(I[s], I[t], j, k);
            if (r == 0.0) continue;
            MultiIndex tup = I;
            tup[s] = j;
            tup[t] = k;
            if (auto sorted = sort_with_parity(std::move(tup)))
              W.entries(row, basis.position(sorted->sorted)) -= sorted->sign * r;
          }
  }
  return W;
}

double pair_simple(const WeitzenboeckMatrix& W, const SimpleDVector& V) {
  const SubspaceFrame& f = V.frame;
  if (f.dim_total() != W.n || f.dim_plane() != W.d)
    throw GeometryError(ErrorCode::FrameMismatch, "d-vector dimensions differ from the matrix");
  if (!near_identity(f.metric, 1e-8))
    throw GeometryError(ErrorCode::FrameMismatch, "d-vector must be expressed in the orthonormal frame");
  const Vector coords = V.scale * MultiIndexBasis(W.n, W.d).simple(f.plane);
  return coords.dot(W.entries * coords);
}

OrthonormalView orthonormal_view(const AlgebraicCurvature& R, const SubspaceFrame& frame) {
  const int n = frame.dim_total();
  const int d = frame.dim_plane();
  OrthonormalView view;
  view.curvature = R.in_basis(frame.full());
  view.frame.point = frame.point;
  view.frame.metric = Matrix::Identity(n, n);
  view.frame.plane = Matrix::Identity(n, n).leftCols(d);
  view.frame.normal = Matrix::Identity(n, n).rightCols(n - d);
  return view;
}

double SimplePairing::max_discrepancy() const {
  return std::max({std::abs(weitzenboeck - ricci_minus_sectional), std::abs(weitzenboeck - mixed),
                   std::abs(ricci_minus_sectional - mixed)});
}

SimplePairing simple_pairing(const AlgebraicCurvature& R, const SubspaceFrame& frame) {
  const int d = frame.dim_plane();
  SimplePairing out;

  const OrthonormalView view = orthonormal_view(R, frame);
  const WeitzenboeckMatrix W = weitz_matrix(view.curvature, d);
  out.weitzenboeck = pair_simple(W, SimpleDVector{view.frame, 1.0});

  const MeanRicciReport means = mean_ricci(R, frame);
  const Matrix ric = R.ricci();
  double ricci_sum = 0.0;
  for (int i = 0; i < d; ++i) ricci_sum += frame.plane.col(i).dot(ric * frame.plane.col(i));
  out.ricci_minus_sectional = ricci_sum - 2.0 * means.intrinsic_sum;
  out.mixed = means.normal_mean.value_or(0.0) * d * (frame.dim_total() - d);
  return out;
}

double BivectorBochner::max_discrepancy() const {
  return std::max({std::abs(value - pairing), std::abs(value - normal_term), std::abs(pairing - normal_term)});
}

BivectorBochner bochner_bivector(const AlgebraicCurvature& R, const Vector& x, const Vector& y) {
  const Matrix& g = R.frame_metric;
  const double tol = 1e-10;
  if (std::abs(x.dot(g * x) - 1.0) > tol || std::abs(y.dot(g * y) - 1.0) > tol || std::abs(x.dot(g * y)) > tol)
    throw GeometryError(ErrorCode::NotOrthonormal, "bivector factors must be orthonormal");
  const int n = R.dim();

  const Matrix ric = R.ricci();
  BivectorBochner out;
  out.value = x.dot(ric * x) + y.dot(ric * y) - 2.0 * R.evaluate(x, y, x, y);

  Matrix span(n, 2);
  span << x, y;
  const SubspaceFrame frame = build_frame(g, span);
  if (n > 2) {
    const OrthonormalView view = orthonormal_view(R, frame);
    out.pairing = pair_simple(weitz_matrix(view.curvature, 2), SimpleDVector{view.frame, 1.0});
    out.normal_term = 2.0 * (n - 2) * mean_ricci(R, frame).normal_mean.value_or(0.0);
  }
  return out;
}

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

Matrix orthonormalize(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

Matrix complement_of(const Matrix& p) {
  const int n = static_cast<int>(p.rows());
  Eigen::HouseholderQR<Matrix> qr(p);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - p.cols());
}

struct PointData {
  Vector point;
  Matrix frame;  // g-orthonormal frame in coordinates
  AlgebraicCurvature curvature;  // in that frame
  Matrix ricci;
};

class NormalMeanObjective {
 public:
  NormalMeanObjective(const CurvatureSource& src, int d) : src_(src), d_(d) {}

  PointData at(const Vector& p) const {
    PointData data;
    data.point = p;
    const AlgebraicCurvature raw = src_.at(p);
    const int n = raw.dim();
    data.frame = build_frame(raw.frame_metric, Matrix::Identity(n, n)).full();
    data.curvature = raw.in_basis(data.frame);
    data.ricci = data.curvature.ricci();
    return data;
  }

  double value(const PointData& data, const Matrix& plane) const {
    ++evaluations;
    const int n = static_cast<int>(plane.rows());
    double ricci_sum = 0.0, sectional_sum = 0.0;
    for (int i = 0; i < d_; ++i) {
      ricci_sum += plane.col(i).dot(data.ricci * plane.col(i));
      for (int j = i + 1; j < d_; ++j)
        sectional_sum += data.curvature.evaluate(plane.col(i), plane.col(j), plane.col(i), plane.col(j));
    }
    return (ricci_sum - 2.0 * sectional_sum) / (static_cast<double>(d_) * (n - d_));
  }

  mutable long long evaluations = 0;

 private:
  const CurvatureSource& src_;
  int d_;
};

}  // namespace

KappaResult kappa_d(const CurvatureSource& source, int d, const KappaSearchConfig& config) {
  const int n = source.dim;
  if (d < 2 || d > n - 1) throw GeometryError(ErrorCode::DimensionMismatch, "kappa_d needs 2 <= d <= n-1");

  KappaResult result;
  result.n = n;
  result.d = d;
  result.homogeneous = source.homogeneous;
  result.non_compact = source.non_compact;
  result.best_normal_mean = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss;

  const bool move_point = !source.homogeneous;
  const int restarts = std::max(1, config.restarts);
  // Each restart owns an equal share of the evaluation budget, so the outcome
  // does not depend on how restarts are scheduled.
  const long long share = std::max(1LL, config.max_evaluations / restarts);

  std::vector<Matrix> starts(restarts);
  for (Matrix& start : starts) {
    start.resize(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) start(i, j) = gauss(rng);
  }

  struct Outcome {
    KappaTrace trace;
    Matrix plane;
    bool exhausted = false;
  };
  std::vector<Outcome> outcomes(restarts);

  parallel_for(restarts, [&](int r) {
    const NormalMeanObjective objective(source, d);
    Vector p = source.base_point;
    if (move_point) {
      const int k = r % std::max(1, config.point_samples) + 1;
      p.resize(n);
      for (int c = 0; c < n; ++c) {
        const double lo = source.lower(c), hi = source.upper(c);
        const double inset = 0.05 * (hi - lo);
        p(c) = lo + inset + halton(k, kPrimes[c % 12]) * (hi - lo - 2 * inset);
      }
    }
    PointData data = objective.at(p);
    Matrix plane = orthonormalize(starts[r]);
    double best = objective.value(data, plane);
    Outcome& out = outcomes[r];
    out.trace.start_value = best;

    double step = config.initial_step;
    while (step >= config.min_step) {
      if (objective.evaluations >= share) {
        out.exhausted = true;
        break;
      }
      bool improved = false;
      const Matrix normal = complement_of(plane);
      // tangent coordinates A ∈ R^{(n−d)×d}, plane(A) = orth(P + N A)
      for (int a = 0; a < n - d && !improved; ++a)
        for (int b = 0; b < d && !improved; ++b)
          for (double sign : {1.0, -1.0}) {
            Matrix trial = plane;
            trial.col(b) += sign * step * normal.col(a);
            trial = orthonormalize(trial);
            const double v = objective.value(data, trial);
            if (v < best) {
              best = v;
              plane = trial;
              improved = true;
              break;
            }
          }
      if (move_point && !improved) {
        for (int c = 0; c < n && !improved; ++c)
          for (double sign : {1.0, -1.0}) {
            Vector q = data.point;
            q(c) += sign * step;
            if (q(c) < source.lower(c) || q(c) > source.upper(c)) continue;
            PointData moved = objective.at(q);
            const double v = objective.value(moved, plane);
            if (v < best) {
              best = v;
              data = std::move(moved);
              improved = true;
              break;
            }
          }
      }
      if (!improved) step *= config.shrink;
    }

    out.trace.end_value = best;
    out.trace.evaluations = objective.evaluations;
    out.trace.point = data.point;
    out.plane = data.frame * plane;
  });

  std::vector<double> finals;
  for (const Outcome& o : outcomes) {
    result.traces.push_back(o.trace);
    finals.push_back(o.trace.end_value);
    result.evaluations += o.trace.evaluations;
    result.budget_exceeded = result.budget_exceeded || o.exhausted;
    if (o.trace.end_value < result.best_normal_mean) {
      result.best_normal_mean = o.trace.end_value;
      result.point = o.trace.point;
      result.plane = o.plane;
    }
  }

  std::sort(finals.begin(), finals.end());
  result.median_normal_mean = finals[finals.size() / 2];
  result.restarts = static_cast<int>(finals.size());
  result.kappa = d * (n - d) * result.best_normal_mean;
  return result;
}

std::vector<LichnerowiczEntry> lichnerowicz_report(double kappa, const std::vector<double>& lambdas,
                                                   double tol) {
  std::vector<LichnerowiczEntry> out;
  const double scale = std::max(1.0, std::abs(kappa));
  for (double lambda : lambdas) {
    LichnerowiczEntry e;
    e.lambda = lambda;
    e.boundary = std::abs(lambda - kappa) <= tol * scale;
    e.satisfied = lambda >= kappa || e.boundary;
    if (e.boundary)
      e.note = "equality: requires grad V == 0 and <R_d U,U> == kappa wherever V != 0";
    else if (e.satisfied)
      e.note = "satisfied";
    else
      e.note = "violation: lambda below kappa_d";
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace ricci
