#include "qshilov/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

namespace qshilov {

namespace {

const Presentation& pm() { return preset_ref(AlgebraId::PolMatSym); }

NcExpr z(int i, int k) { return pm().symbol("z" + std::to_string(i) + std::to_string(k)); }
NcExpr zs(int i, int k) { return pm().symbol("z" + std::to_string(i) + std::to_string(k) + "*"); }

TruncatedMatrix zero_like(const TruncatedMatrix& m) {
  return TruncatedMatrix{SparseOp(m.m.rows(), m.m.cols()), m.N, m.legs, 0};
}

double guard_size(const TruncatedMatrix& m) { return guard_residual(m, zero_like(m)); }

constexpr double kTwoPi = 2 * std::numbers::pi;

}  // namespace

std::vector<NcExpr> j_generators() {
  std::vector<NcExpr> out;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      NcExpr g(AlgebraId::PolMatSym, i == j ? LaurentScalar(-1) : LaurentScalar());
      for (int k = 1; k <= 2; ++k) g += q_pow(4 - i - j) * (z(i, k) * zs(j, k));
      out.push_back(normal_form(g, pm()));
    }
  }
  return out;
}

NcExpr det_q() { return z(2, 2) * z(1, 1) - q_pow(-1) * (z(2, 1) * z(2, 1)); }

double guard_norm(const TruncatedMatrix& m) { return op_norm(guard_columns(m)); }

NormSeries norm_series(const OpSymbolExpr& e, int N, double q, double rel_tol) {
  NormSeries r{guard_norm(materialize(e, N, q)), N, false};
  for (int next = N + 8; std::pow(static_cast<double>(next), e.legs()) <= static_cast<double>(kMaxDimension);
       next += 8) {
    const double w = guard_norm(materialize(e, next, q));
    r.converged = w - r.value <= rel_tol * w;
    r.value = std::max(r.value, w);
    r.N = next;
    if (r.converged) break;
  }
  return r;
}

double converged_norm(const OpSymbolExpr& e, int N, double q, double rel_tol) {
  return norm_series(e, N, q, rel_tol).value;
}

bool annihilates_j(Family f) {
  return f == Family::Omega || f == Family::Theta || f == Family::Chi || f == Family::ChiCoact;
}

double AnnihilationResult::max_residual() const {
  return std::max(*std::max_element(residuals.begin(), residuals.end()), product_residual);
}

AnnihilationResult annihilation_residual(const RepSpec& spec, int N, double q, int product_degree,
                                         const PhaseBindings& bindings) {
  if (spec.algebra() != AlgebraId::PolMatSym) throw AlgebraMismatch("annihilation_residual: expects pol-matsym");
  AnnihilationResult r;
  const auto gens = j_generators();
  std::vector<Word> words{Word{}};
  for (std::size_t start = 0; start < words.size(); ++start) {
    if (static_cast<int>(words[start].size()) == product_degree) continue;
    for (Letter l = 0; l < pm().alphabet_size(); ++l) {
      Word w = words[start];
      w.push_back(l);
      words.push_back(w);
    }
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto m = materialize(rep_image(gens[k], spec), N, q, bindings);
    r.residuals[k] = guard_size(m);
    r.witness = std::max(r.witness, std::abs(m.m.coeff(0, 0)));
    for (const auto& w : words) {
      if (w.empty()) continue;
      const NcExpr gw = gens[k] * NcExpr::word(AlgebraId::PolMatSym, w);
      r.product_residual = std::max(r.product_residual, guard_size(materialize(rep_image(gw, spec), N, q, bindings)));
    }
  }
  return r;
}

double shilov_norm(const Angle& theta, int grid, int N, double q) {
  if (grid < 4) throw std::invalid_argument("shilov_norm: grid must be >= 4");
  double best = 0.0;
  for (int j = 0; j < grid; ++j) {
    const auto spec = RepSpec::make(Family::Omega, {Angle::grid(j, grid)});
    const OpSymbolExpr x = rep_image(z(2, 1), spec) + OpSymbolExpr::identity(1, 1, theta);
    best = std::max(best, guard_norm(materialize(x, N, q)));
  }
  return best;
}

std::vector<Family> matsym_families() {
  std::vector<Family> out;
  for (Family f : all_families()) {
    if (RepSpec::make(f).algebra() == AlgebraId::PolMatSym) out.push_back(f);
  }
  return out;
}

std::vector<RepSpec> phase_sweep(Family f, int grid) {
  const std::size_t arity = RepSpec::make(f).arity();
  std::vector<RepSpec> out;
  if (arity == 0) return {RepSpec::make(f)};
  for (int a = 0; a < grid; ++a) {
    if (arity == 1) {
      out.push_back(RepSpec::make(f, {Angle::grid(a, grid)}));
      continue;
    }
    for (int b = 0; b < grid; ++b) out.push_back(RepSpec::make(f, {Angle::grid(a, grid), Angle::grid(b, grid)}));
  }
  return out;
}

DominationResult norm_domination(const std::vector<NcExpr>& sample, const Truncations& n, double q, int grid) {
  DominationResult r;
  r.worst_excess = -std::numeric_limits<double>::infinity();
  const auto fock = RepSpec::make(Family::Fock);
  for (const auto& x : sample) {
    const NormSeries series = norm_series(rep_image(x, fock), n.n3, q);
    const double rhs = series.value;
    double slack = 0;
    if (!series.converged) {
      const auto deg = static_cast<double>(x.degree());
      double l1 = 0;
      for (const auto& [w, c] : x.terms()) l1 += std::abs(scalar_eval(c, q));
      slack = deg * l1 * std::pow(q, series.N - deg);
    }
    r.max_slack = std::max(r.max_slack, slack);
    for (Family f : matsym_families()) {
      if (f == Family::Fock) continue;
      for (const auto& spec : phase_sweep(f, grid)) {
        const double lhs = guard_norm(materialize(rep_image(x, spec), n.for_legs(spec.legs()), q));
        ++r.comparisons;
        if (lhs - rhs - slack > r.worst_excess) {
          r.worst_excess = lhs - rhs - slack;
          r.worst = spec.to_string() + " on " + pm().to_string(x);
        }
      }
    }
  }
  if (r.comparisons == 0) r.worst_excess = 0;
  return r;
}

std::vector<NcExpr> random_words(std::mt19937_64& rng, AlgebraId alg, std::size_t count, int max_deg) {
  const auto& p = preset_ref(alg);
  std::uniform_int_distribution<int> deg(1, max_deg);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(p.alphabet_size()) - 1);
  std::vector<NcExpr> out;
  for (std::size_t k = 0; k < count; ++k) {
    Word w(static_cast<std::size_t>(deg(rng)));
    for (auto& l : w) l = static_cast<Letter>(letter(rng));
    out.push_back(NcExpr::word(alg, w));
  }
  return out;
}

std::vector<std::vector<NcExpr>> random_holomorphic_arrays(std::mt19937_64& rng, int n, std::size_t count,
                                                           int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), letter(0, 2), coeff(-2, 2), nterms(1, 2);
  std::vector<std::vector<NcExpr>> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<NcExpr> a;
    for (int e = 0; e < n * n; ++e) {
      NcExpr x(AlgebraId::PolMatSym);
      for (int t = nterms(rng); t > 0; --t) {
        Word w(static_cast<std::size_t>(deg(rng)));
        for (auto& l : w) l = static_cast<Letter>(letter(rng));
        int c = coeff(rng);
        x.add_term(w, LaurentScalar(c == 0 ? 1 : c));
      }
      a.push_back(x);
    }
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

// Norm of the n x n block operator (rep(a_ij)) on the guard block.
double block_norm(const std::vector<OpSymbolExpr>& a, int n, int N, double q, const PhaseBindings& bindings) {
  std::vector<TruncatedMatrix> blocks;
  int guard = 0;
  for (const auto& x : a) {
    blocks.push_back(materialize(x, N, q, bindings));
    guard = std::max(guard, blocks.back().guard);
  }
  const Eigen::Index d = blocks[0].m.rows();
  const auto cols = guard_indices(N, a[0].legs(), guard);
  const auto g = static_cast<Eigen::Index>(cols.size());
  SparseOp out(n * d, n * g);
  std::vector<Eigen::Triplet<Complex>> t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const SparseOp& m = blocks[i * n + j].m;
      for (Eigen::Index c = 0; c < g; ++c) {
        for (SparseOp::InnerIterator it(m, cols[c]); it; ++it) t.emplace_back(i * d + it.row(), j * g + c, it.value());
      }
    }
  }
  out.setFromTriplets(t.begin(), t.end());
  return op_norm(out);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  double best = std::max(fc, fd);
  for (int k = 0; k < iters; ++k) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

// Grid maximum of a periodic function refined around the best two grid points.
double sup_1d(const std::function<double(double)>& f, int grid, double* argmax = nullptr) {
  const double h = kTwoPi / grid;
  std::vector<std::pair<double, double>> vals;
  for (int j = 0; j < grid; ++j) vals.emplace_back(f(j * h), j * h);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double best = vals[0].first;
  if (argmax) *argmax = vals[0].second;
  for (std::size_t k = 0; k < std::min<std::size_t>(2, vals.size()); ++k) {
    const double x = vals[k].second;
    double local_arg = x;
    const double v = golden_max(
        [&](double t) {
          const double y = f(t);
          if (y > best) local_arg = t;
          return y;
        },
        x - h, x + h, 20);
    if (v > best) {
      best = v;
      if (argmax) *argmax = local_arg;
    }
  }
  return best;
}

// Coarse grid maximum refined by alternating golden-section sweeps.
double sup_2d(const std::function<double(double, double)>& f, int grid) {
  const double h = kTwoPi / grid;
  double best = -1, b1 = 0, b2 = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double v = f(i * h, j * h);
      if (v > best) best = v, b1 = i * h, b2 = j * h;
    }
  }
  double w = h;
  for (int round = 0; round < 4; ++round, w /= 2) {
    best = std::max(best, golden_max([&](double t) {
      const double v = f(t, b2);
      if (v > best) b1 = t;
      return v;
    }, b1 - w, b1 + w, 20));
    best = std::max(best, golden_max([&](double t) {
      const double v = f(b1, t);
      if (v > best) b2 = t;
      return v;
    }, b2 - w, b2 + w, 20));
  }
  return best;
}

}  // namespace

HoloInequality holo_matrix_inequality(const std::vector<NcExpr>& a, int n, const Truncations& t, double q, int grid) {
  if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("holo_matrix_inequality: need n*n entries");
  for (const auto& x : a) {
    for (const auto& [w, c] : x.terms()) {
      if (std::any_of(w.begin(), w.end(), [](Letter l) { return l > 2; })) {
        throw std::invalid_argument("holo_matrix_inequality: entries must be holomorphic");
      }
    }
  }
  const auto images = [&](const RepSpec& spec) {
    std::vector<OpSymbolExpr> out;
    for (const auto& x : a) out.push_back(rep_image(x, spec));
    return out;
  };
  HoloInequality r;
  r.fock = block_norm(images(RepSpec::make(Family::Fock)), n, t.n3, q, {});
  const auto tau = images(RepSpec::make(Family::Tau, {Angle::symbol("phi")}));
  r.tau_sup = sup_1d([&](double p) { return block_norm(tau, n, t.n2, q, {{"phi", p}}); }, std::min(grid, 16));
  const auto chi = images(RepSpec::make(Family::ChiCoact, {Angle::symbol("phi1"), Angle::symbol("phi2")}));
  const auto chi_at = [&](double p1, double p2) { return block_norm(chi, n, t.n1, q, {{"phi1", p1}, {"phi2", p2}}); };
  r.chi_sup = sup_2d(chi_at, std::min(grid, 8));
  return r;
}

DilationResult dilation_check(int N, int m, double q, const std::vector<NcExpr>& holomorphic, const Angle& phi) {
  DilationResult r;
  const BaseOps b = base_ops(N, q);
  const DenseOp T = DenseOp(SparseOp(b.C4 * b.S));
  const DenseOp U = egervary_dilation(T, m);
  r.unitarity = op_norm(DenseOp(U.adjoint() * U - DenseOp::Identity(U.rows(), U.cols())));
  DenseOp Un = DenseOp::Identity(U.rows(), U.cols()), Tn = DenseOp::Identity(N, N);
  for (int k = 1; k <= m; ++k) {
    Un = Un * U;
    Tn = Tn * T;
    r.compression = std::max(r.compression, op_norm(DenseOp(Un.topLeftCorner(N, N) - Tn)));
  }
  for (const auto& a : holomorphic) {
    if (static_cast<int>(a.degree()) > m) continue;
    const auto fock = materialize(rep_image(a, RepSpec::make(Family::Fock)), N, q);
    const SparseOp c = compress_psi(psi_image(a, U, N, q, PsiVariant::Psi), N, m + 1, PsiVariant::Psi);
    r.psi = std::max(r.psi, norm_bound(SparseOp(c - fock.m)));
    const auto coact = materialize(rep_image(a, RepSpec::make(Family::FPhiCoact, {phi})), N, q);
    const SparseOp cp = compress_psi(psi_image(a, U, N, q, PsiVariant::PsiPhi, phi), N, m + 1, PsiVariant::PsiPhi);
    r.psi_phi = std::max(r.psi_phi, norm_bound(SparseOp(cp - coact.m)));
  }
  return r;
}

int lemma_bound_check(const Angle& phi1, const Angle& phi2) {
  const Angle mid = mpq_class(1, 2) * (phi1 + phi2 + Angle::pi_times(1));
  const auto omega = RepSpec::make(Family::Omega, {mid});
  const auto theta = RepSpec::make(Family::Theta, {phi1, phi2});
  int mismatches = 0;
  for (Letter l = 0; l < pm().alphabet_size(); ++l) {
    const NcExpr x = NcExpr::letter(AlgebraId::PolMatSym, l);
    if (character_substitute(rep_image(x, omega), 1, phi2) != rep_image(x, theta)) ++mismatches;
  }
  return mismatches;
}

DetUnitarity det_unitarity_check(const Angle& phi, int N, double q) {
  DetUnitarity r;
  const auto omega = RepSpec::make(Family::Omega, {phi});
  const OpSymbolExpr d = rep_image(det_q(), omega);
  const OpSymbolExpr target = OpSymbolExpr::identity(1, q_pow(-2));
  r.star_det = guard_size(materialize(d.adjoint() * d - target, N, q));
  r.det_star = guard_size(materialize(d * d.adjoint() - target, N, q));
  r.omega_det = materialize(d, N, q).m.coeff(0, 0);
  const auto theta = RepSpec::make(Family::Theta, {phi, phi + Angle::pi_times(mpq_class(1, 3))});
  const OpSymbolExpr td = rep_image(det_q(), theta);
  const Complex v = materialize(td, 1, q).m.coeff(0, 0);
  r.theta_modulus_residual = std::abs(std::norm(v) - 1.0 / (q * q));
  return r;
}

std::array<double, 3> regular_involution_check(const Angle& phi, int N, double q) {
  const auto omega = RepSpec::make(Family::Omega, {phi});
  const auto img = [&](const NcExpr& x) { return rep_image(x, omega); };
  const OpSymbolExpr det_inv = q_pow(2) * img(det_q()).adjoint();
  const OpSymbolExpr r11 = img(zs(1, 1)) - q_pow(-2) * (img(z(2, 2)) * det_inv);
  const OpSymbolExpr r21 = img(zs(2, 1)) + q_pow(-1) * (img(z(2, 1)) * det_inv);
  const OpSymbolExpr r22 = img(zs(2, 2)) - img(z(1, 1)) * det_inv;
  return {guard_size(materialize(r11, N, q)), guard_size(materialize(r21, N, q)), guard_size(materialize(r22, N, q))};
}

}  // namespace qshilov
