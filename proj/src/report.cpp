#include "qshilov/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "qshilov/boundary.hpp"
#include "qshilov/hopf.hpp"
#include "qshilov/ncalg.hpp"
#include "qshilov/oprep.hpp"

namespace qshilov {

namespace {

const Presentation& pm() { return preset_ref(AlgebraId::PolMatSym); }
const Presentation& su() { return preset_ref(AlgebraId::CSU2); }
const Presentation& uq() { return preset_ref(AlgebraId::UqSl2); }
NcExpr Z(std::string_view n) { return pm().symbol(n); }
NcExpr T(std::string_view n) { return su().gen(n); }
NcExpr U(std::string_view n) { return uq().gen(n); }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

class Recorder {
public:
  Recorder(std::string suite, std::vector<CheckEntry>& out) : suite_(std::move(suite)), out_(out) {}

  /// value <= tol passes
  void upper(const std::string& name, const std::string& anchor, const std::string& params, double tol,
             const std::function<double()>& f) {
    record(name, anchor, params, tol, f, [](double v, double t) { return v <= t; });
  }
  /// value >= tol passes
  void lower(const std::string& name, const std::string& anchor, const std::string& params, double tol,
             const std::function<double()>& f) {
    record(name, anchor, params, tol, f, [](double v, double t) { return v >= t; });
  }
  /// exact check: value counts mismatches
  void exact(const std::string& name, const std::string& anchor, const std::string& params,
             const std::function<double()>& f) {
    upper(name, anchor, params, 0, f);
  }

private:
  void record(const std::string& name, const std::string& anchor, const std::string& params, double tol,
              const std::function<double()>& f, const std::function<bool(double, double)>& pass) {
    CheckEntry e{suite_, suite_ + "." + name, anchor, params, 0, tol, false, {}};
    try {
      e.value = f();
      e.pass = std::isfinite(e.value) && pass(e.value, tol);
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
    out_.push_back(std::move(e));
  }

  std::string suite_;
  std::vector<CheckEntry>& out_;
};

std::vector<NcExpr> uq_words(int max_len) {
  std::vector<NcExpr> out{uq().one()};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Letter l = 0; l < uq().alphabet_size(); ++l) {
        Word x = w;
        x.push_back(l);
        next.push_back(x);
        out.push_back(NcExpr::word(AlgebraId::UqSl2, x));
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<NcExpr> pm_letters() {
  std::vector<NcExpr> out;
  for (const auto& a : pm().alphabet()) out.push_back(Z(a));
  return out;
}

Truncations truncations(const RunConfig& c) { return {c.n1, c.n2, c.n3}; }

std::vector<RepSpec> diagonal_sweep(Family f, long grid) {
  const auto arity = RepSpec::make(f).arity();
  if (arity == 0) return {RepSpec::make(f)};
  std::vector<RepSpec> out;
  for (long j = 0; j < grid; ++j) {
    std::vector<Angle> phases;
    for (std::size_t k = 0; k < arity; ++k) phases.push_back(Angle::grid(j + 3 * static_cast<long>(k), grid));
    out.push_back(RepSpec::make(f, phases));
  }
  return out;
}

void suite_relations(const RunConfig& c, Recorder& r) {
  const Truncations t = truncations(c);
  for (Family f : all_families()) {
    const int N = t.for_legs(RepSpec::make(f).legs());
    r.upper(family_name(f), "catalog representation satisfies the defining relations",
            "grid=8 N=" + std::to_string(N) + " q=" + fmt(c.q), 1e-10, [&] {
              double worst = 0;
              for (const auto& spec : phase_sweep(f, 8))
                worst = std::max(worst, relation_residual(preset_ref(spec.algebra()), spec, N, c.q));
              return worst;
            });
  }
}

void suite_hopf(const RunConfig&, Recorder& r) {
  r.exact("pairing-values", "t12(E) = q^-1/2, t21(F) = q^1/2, t11(K) = q, t22(K) = q^-1", "", [] {
    int bad = 0;
    bad += pairing(T("t12"), U("E")) != s_pow(-1);
    bad += pairing(T("t21"), U("F")) != s_pow(1);
    bad += pairing(T("t11"), U("K")) != q_pow(1);
    bad += pairing(T("t22"), U("K")) != q_pow(-1);
    for (const char* t : {"t11", "t12", "t21", "t22"}) {
      for (const char* x : {"E", "F", "K"}) {
        const std::string key = std::string(t) + x;
        if (key == "t12E" || key == "t21F" || key == "t11K" || key == "t22K") continue;
        bad += !pairing(T(t), U(x)).is_zero();
      }
    }
    return static_cast<double>(bad);
  });
  r.exact("coassociativity", "(Delta x id) Delta = (id x Delta) Delta", "words<=3", [] {
    int bad = 0;
    for (const auto& x : uq_words(3)) bad += !coassociator(x).empty();
    return static_cast<double>(bad);
  });
  r.exact("antipode", "m (S x id) Delta = m (id x S) Delta = eps", "words<=3", [] {
    int bad = 0;
    for (const auto& x : uq_words(3)) {
      const NcExpr unit(AlgebraId::UqSl2, counit(x));
      bad += antipode_left(x) != unit;
      bad += antipode_right(x) != unit;
    }
    return static_cast<double>(bad);
  });
  r.exact("pairing-bialgebra", "<ab, x> = <a (x) b, Delta x> and <t, xy> = <Delta t, x (x) y>", "words<=2", [] {
    int bad = 0;
    const std::vector<NcExpr> ts = {T("t11"), T("t12"), T("t21"), T("t22")};
    const auto xs = uq_words(2);
    for (const auto& a : ts) {
      for (const auto& b : ts) {
        for (const auto& x : xs) {
          LaurentScalar via;
          const TensorExpr d = coproduct(x);
          for (const auto& [k, v] : d.terms())
            via += v * pairing(a, NcExpr::word(AlgebraId::UqSl2, k.first)) *
                   pairing(b, NcExpr::word(AlgebraId::UqSl2, k.second));
          bad += pairing(nc_mul(a, b, su()), x) != via;
        }
      }
    }
    for (const auto& t : {T("t11") * T("t21"), T("t22") * T("t12"), T("t11") * T("t22") * T("t21")}) {
      for (const auto& x : uq_words(1)) {
        for (const auto& y : uq_words(2)) {
          LaurentScalar via;
          const TensorExpr d = csl_coproduct(t);
          for (const auto& [k, v] : d.terms())
            via += v * pairing(NcExpr::word(AlgebraId::CSU2, k.first), x) *
                   pairing(NcExpr::word(AlgebraId::CSU2, k.second), y);
          bad += pairing(t, x * y) != via;
        }
      }
    }
    return static_cast<double>(bad);
  });
  r.exact("pairing-relations", "pairing vanishes on the defining relations of c-su2-q", "words<=3", [] {
    int bad = 0;
    const auto xs = uq_words(3);
    for (const auto& rel : su().relations())
      for (const auto& x : xs) bad += !pairing(rel.lhs - rel.rhs, x).is_zero();
    return static_cast<double>(bad);
  });
  r.exact("action-table", "E, F, K act on z11, z21, z22 by the tabulated formulas", "", [] {
    int bad = 0;
    bad += act(U("E"), Z("z21")) != s_pow(-1) * Z("z11");
    bad += !act(U("E"), Z("z11")).is_zero();
    bad += act(U("E"), Z("z22")) != s_pow(-1) * (q_pow(1) + q_pow(-1)) * Z("z21");
    bad += act(U("F"), Z("z11")) != s_pow(1) * (q_pow(1) + q_pow(-1)) * Z("z21");
    bad += act(U("F"), Z("z21")) != s_pow(1) * Z("z22");
    bad += !act(U("F"), Z("z22")).is_zero();
    bad += act(U("K"), Z("z11")) != q_pow(2) * Z("z11");
    bad += act(U("K"), Z("z21")) != Z("z21");
    bad += act(U("K"), Z("z22")) != q_pow(-2) * Z("z22");
    return static_cast<double>(bad);
  });
  r.exact("action-relations", "act(xi, relation) = 0 for xi in E, F, K", "", [] {
    int bad = 0;
    for (const auto& rel : pm().relations())
      for (const char* x : {"E", "F", "K"}) bad += !act(U(x), rel.lhs - rel.rhs).is_zero();
    const auto fs = pm_letters();
    for (const auto& rel : uq().relations())
      for (const auto& f : fs) bad += act(rel.lhs, f) != act(rel.rhs, f);
    return static_cast<double>(bad);
  });
  r.exact("module-algebra", "xi(fg) = sum (xi(1) f)(xi(2) g)", "deg f, g <= 2", [] {
    int bad = 0;
    std::vector<NcExpr> fs{pm().one()};
    const auto letters = pm_letters();
    fs.insert(fs.end(), letters.begin(), letters.end());
    for (const auto& a : letters)
      for (const auto& b : letters) fs.push_back(a * b);
    for (const char* x : {"E", "F", "K", "Kinv"}) {
      const TensorExpr d = coproduct(U(x));
      for (std::size_t i = 0; i < fs.size(); i += 3) {
        for (std::size_t j = 0; j < fs.size(); j += 2) {
          NcExpr rhs(AlgebraId::PolMatSym);
          for (const auto& [k, v] : d.terms())
            rhs += v * (act(NcExpr::word(AlgebraId::UqSl2, k.first), fs[i]) *
                        act(NcExpr::word(AlgebraId::UqSl2, k.second), fs[j]));
          bad += act(U(x), nc_mul(fs[i], fs[j], pm())) != normal_form(rhs, pm());
        }
      }
    }
    return static_cast<double>(bad);
  });
  r.exact("star-compatibility", "(xi f)* = S(xi)* f*", "", [] {
    int bad = 0;
    auto fs = pm_letters();
    fs.push_back(Z("z21") * Z("z11*"));
    fs.push_back(Z("z22*") * Z("z22"));
    for (const char* x : {"E", "F", "K", "Kinv"}) {
      const NcExpr sx = nc_star(antipode(U(x)), uq());
      for (const auto& f : fs) bad += nc_star(act(U(x), f), pm()) != act(sx, nc_star(f, pm()));
    }
    return static_cast<double>(bad);
  });
}

void suite_coaction(const RunConfig& c, Recorder& r) {
  const CoactionTable table =
      c.mutation == Mutation::DropCoactionSummand ? mutated_coaction_table(1, 1, 1, 1) : coaction_table();
  r.exact("multiplicative", "D(fg) = D(f) D(g)", "144 generator pairs", [&] {
    const auto rep = verify_coaction_hom(2, table);
    return static_cast<double>(rep.mismatches.size() + (rep.pairs_checked == 144 ? 0 : 1));
  });
  r.exact("multiplicative-degree-3", "D(fg) = D(f) D(g)", "letter words, total degree <= 3", [&] {
    return static_cast<double>(verify_coaction_hom(3, table).mismatches.size());
  });
  r.exact("recovers-action", "D(z)(xi) = xi z", "xi-words<=3", [] {
    int bad = 0;
    const auto fs = pm_letters();
    for (const auto& x : uq_words(3))
      for (const auto& f : fs) bad += coaction_eval(f, x) != act(x, f);
    return static_cast<double>(bad);
  });
}

std::vector<Angle> wick_phases() { return {Angle{}, Angle::pi_times(mpq_class(1, 3)), Angle::pi_times(1)}; }

void suite_wick(const RunConfig& c, Recorder& r) {
  for (const auto& phi : wick_phases()) {
    const std::string p = "phi=" + phi.to_string() + " N=" + std::to_string(c.n2) + " q=" + fmt(c.q);
    r.upper("coherent[" + phi.to_string() + "]", "vacuum of tau_phi is coherent and cyclic", p, 1e-12, [&] {
      const auto res = coherent_check(RepSpec::make(Family::Tau, {phi}), c.n2, c.q, 3);
      if (!res.cyclic) return std::numeric_limits<double>::infinity();
      return std::max({res.z11_residual, res.z21_residual, res.z22_residual});
    });
    r.upper("moments[" + phi.to_string() + "]", "tau_phi and the F-phi coaction representation share vacuum moments",
            p + " deg<=4", 1e-10, [&] {
              return moment_match(RepSpec::make(Family::Tau, {phi}), RepSpec::make(Family::FPhiCoact, {phi}), 4,
                                  c.n2, c.q);
            });
  }
}

void suite_characters(const RunConfig& c, Recorder& r) {
  const Angle phi = Angle::symbol("phi"), psi = Angle::symbol("psi");
  const Angle phi1 = Angle::symbol("phi1"), phi2 = Angle::symbol("phi2");
  std::mt19937_64 rng(c.seed);
  std::vector<NcExpr> xs = pm_letters();
  for (const auto& w : random_words(rng, AlgebraId::PolMatSym, 20, 3)) xs.push_back(w);
  const auto chain = [&](const std::string& name, const std::string& anchor, const RepSpec& from, int leg,
                         const Angle& at, const RepSpec& to) {
    r.exact(name, anchor, "symbolic phases, 6 letters + 20 words", [&] {
      int bad = 0;
      for (const auto& x : xs) bad += character_substitute(rep_image(x, from), leg, at) != rep_image(x, to);
      return static_cast<double>(bad);
    });
  };
  chain("fock-to-tau", "character on leg 3 takes pi_F to tau_phi", RepSpec::make(Family::Fock), 3, phi,
        RepSpec::make(Family::Tau, {phi}));
  chain("tau-to-omega", "character on leg 2 takes tau_phi to omega_psi", RepSpec::make(Family::Tau, {phi}), 2, psi,
        RepSpec::make(Family::Omega, {psi}));
  chain("omega-to-theta", "character on leg 1 takes omega_psi to theta", RepSpec::make(Family::Omega, {psi}), 1, phi2,
        RepSpec::make(Family::Theta, {2 * psi - phi2 + Angle::pi_times(1), phi2}));
  chain("coact-to-nu", "character on leg 2 takes the F-phi coaction representation to nu_phi",
        RepSpec::make(Family::FPhiCoact, {phi}), 2, Angle{}, RepSpec::make(Family::Nu, {phi}));
  chain("nu-to-theta", "character on leg 1 takes nu_phi to theta_{phi1, phi}", RepSpec::make(Family::Nu, {phi}), 1,
        phi1, RepSpec::make(Family::Theta, {phi1, phi}));
  chain("chi-coact-to-chi", "character on leg 1 takes the chi coaction representation to chi",
        RepSpec::make(Family::ChiCoact, {phi1, phi2}), 1, Angle{}, RepSpec::make(Family::Chi, {phi1, phi2}));

  const int terms = 40;
  const std::string p = "terms=40 N=" + std::to_string(c.n1) + " q=" + fmt(c.q);
  for (int n : {2, 4}) {
    r.upper("cstar-C" + std::to_string(n), "C_n^2 = (1 - q^n) sum q^{nk} S^{k+1} S*^{k+1}", p,
            1e-12 + (1 + 1e-9) * std::pow(c.q, n * terms), [&] { return cstar_identity_residual(n, c.n1, terms, c.q); });
  }
  r.upper("cstar-D", "D = sum q^k (S^k S*^k - S^{k+1} S*^{k+1})", p, 1e-12 + (1 + 1e-9) * std::pow(c.q, terms),
          [&] { return cstar_d_residual(c.n1, terms, c.q); });

  r.upper("domination", "||pi(x)|| <= ||pi_F(x)|| for every catalog family", "50 words deg 1-3, grid=8", c.tol, [&] {
    std::mt19937_64 g(c.seed);
    return norm_domination(random_words(g, AlgebraId::PolMatSym, 50, 3), truncations(c), c.q, 8).worst_excess;
  });
}

void suite_annihilators(const RunConfig& c, Recorder& r) {
  for (Family f : {Family::Omega, Family::Theta, Family::Chi, Family::ChiCoact}) {
    r.upper(family_name(f), "family annihilates J and its products g w",
            "grid=8 deg w<=2 N=" + std::to_string(c.n1) + " q=" + fmt(c.q), 1e-10, [&] {
              double worst = 0;
              for (const auto& spec : diagonal_sweep(f, 8))
                worst = std::max(worst, annihilation_residual(spec, c.n1, c.q, 2).max_residual());
              return worst;
            });
  }
  const Truncations t = truncations(c);
  for (Family f : {Family::Fock, Family::Tau, Family::Nu}) {
    const int N = t.for_legs(RepSpec::make(f).legs());
    r.lower("witness-" + family_name(f), "family does not annihilate J: vacuum entry of some g_ij",
            "grid=8 N=" + std::to_string(N) + " q=" + fmt(c.q), std::pow(c.q, 4) / 2, [&] {
              double weakest = std::numeric_limits<double>::infinity();
              for (const auto& spec : diagonal_sweep(f, 8))
                weakest = std::min(weakest, annihilation_residual(spec, N, c.q, 0).witness);
              return weakest;
            });
  }
  r.exact("self-adjoint", "g11* = g11, g22* = g22, g12* = g21", "", [] {
    const auto g = j_generators();
    return static_cast<double>(!nc_equal(nc_star(g[0], pm()), g[0], pm()) +
                               !nc_equal(nc_star(g[3], pm()), g[3], pm()) +
                               !nc_equal(nc_star(g[1], pm()), g[2], pm()));
  });
}

void suite_shilov(const RunConfig& c, Recorder& r) {
  const double slack = 10.0 / (static_cast<double>(c.phi_grid) * c.phi_grid);
  for (long k = 0; k < 4; ++k) {
    const Angle theta = Angle::grid(k, 4);
    r.upper("max-modulus[" + theta.to_string() + "]", "sup_phi ||omega_phi(z21) + e^{i theta}|| = 2",
            "grid=" + std::to_string(c.phi_grid) + " N=" + std::to_string(c.n1) + " q=" + fmt(c.q), slack,
            [&] {
              const double v = shilov_norm(theta, c.phi_grid, c.n1, c.q);
              return v > 2 + c.tol ? std::numeric_limits<double>::infinity() : 2 - v;
            });
  }
  r.exact("character-identity", "character on leg 1 takes omega_{(phi1+phi2+pi)/2} to theta_{phi1, phi2}",
          "symbolic + 16 seeded pairs", [&] {
            std::mt19937_64 rng(c.seed);
            std::uniform_int_distribution<long> j(0, 63);
            int bad = lemma_bound_check(Angle::symbol("phi1"), Angle::symbol("phi2"));
            for (int k = 0; k < 16; ++k) bad += lemma_bound_check(Angle::grid(j(rng), 64), Angle::grid(j(rng), 64));
            return static_cast<double>(bad);
          });
}

void suite_dilation(const RunConfig& c, Recorder& r) {
  std::mt19937_64 rng(c.seed);
  std::vector<NcExpr> samples;
  for (const auto& a : random_holomorphic_arrays(rng, 1, 8, 2)) samples.push_back(a[0]);
  DilationResult d;
  std::string error;
  try {
    d = dilation_check(c.n3, 4, c.q, samples, Angle::grid(1, 8));
  } catch (const std::exception& ex) {
    error = ex.what();
  }
  const std::string p = "m=4 N=" + std::to_string(c.n3) + " q=" + fmt(c.q);
  const auto value = [&](double v) {
    if (!error.empty()) throw std::runtime_error(error);
    return v;
  };
  r.upper("unitarity", "Egervary dilation is unitary", p, 1e-12, [&] { return value(d.unitarity); });
  r.upper("compression", "P U^n P = T^n for n <= m", p, 1e-12, [&] { return value(d.compression); });
  r.upper("psi", "Psi compresses to pi_F on holomorphic elements", p + " 8 samples", 1e-12,
          [&] { return value(d.psi); });
  r.upper("psi-phi", "Psi_phi compresses to the F-phi coaction representation", p + " 8 samples", 1e-12,
          [&] { return value(d.psi_phi); });
}

void suite_inequalities(const RunConfig& c, Recorder& r) {
  const Truncations t = truncations(c);
  for (int n : {1, 2}) {
    std::mt19937_64 rng(c.seed + static_cast<std::uint64_t>(n));
    std::vector<HoloInequality> hs;
    std::string error;
    try {
      for (const auto& a : random_holomorphic_arrays(rng, n, 20, 2))
        hs.push_back(holo_matrix_inequality(a, n, t, c.q, c.phi_grid));
    } catch (const std::exception& ex) {
      error = ex.what();
    }
    const auto worst = [&](const std::function<double(const HoloInequality&)>& f) {
      if (!error.empty()) throw std::runtime_error(error);
      double w = -std::numeric_limits<double>::infinity();
      for (const auto& h : hs) w = std::max(w, f(h));
      return w;
    };
    const std::string p = "n=" + std::to_string(n) + " 20 arrays deg<=2 q=" + fmt(c.q);
    r.upper("fock-tau[n=" + std::to_string(n) + "]", "||(pi_F(a_ij))|| <= sup_phi ||(tau_phi(a_ij))||", p, 1e-6,
            [&] { return worst([](const HoloInequality& h) { return h.fock - h.tau_sup; }); });
    r.upper("tau-chi[n=" + std::to_string(n) + "]",
            "sup_phi ||(tau_phi(a_ij))|| <= sup ||(chi coaction representation(a_ij))||", p, 1e-6,
            [&] { return worst([](const HoloInequality& h) { return h.tau_sup - h.chi_sup; }); });
  }
}

void suite_regular(const RunConfig& c, Recorder& r) {
  std::vector<DetUnitarity> ds;
  std::vector<std::array<double, 3>> invs;
  std::vector<double> phis;
  for (long j = 0; j < 8; ++j) {
    const Angle phi = Angle::grid(j, 8);
    ds.push_back(det_unitarity_check(phi, c.n1, c.q));
    invs.push_back(regular_involution_check(phi, c.n1, c.q));
    phis.push_back(phi.value());
  }
  const std::string p = "grid=8 N=" + std::to_string(c.n1) + " q=" + fmt(c.q);
  const auto worst = [](const auto& xs, auto f) {
    double w = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) w = std::max(w, f(k));
    return w;
  };
  r.upper("det-star-det", "omega(det)* omega(det) = q^-2", p, 1e-10,
          [&] { return worst(ds, [&](std::size_t k) { return ds[k].star_det; }); });
  r.upper("det-det-star", "omega(det) omega(det)* = q^-2", p, 1e-10,
          [&] { return worst(ds, [&](std::size_t k) { return ds[k].det_star; }); });
  r.upper("omega-det", "omega_phi(det) = -q^-1 e^{2 i phi}", p, 1e-10, [&] {
    return worst(ds, [&](std::size_t k) { return std::abs(ds[k].omega_det + std::polar(1 / c.q, 2 * phis[k])); });
  });
  r.upper("theta-det", "|theta(det)|^2 = q^-2", p, 1e-10,
          [&] { return worst(ds, [&](std::size_t k) { return ds[k].theta_modulus_residual; }); });
  const char* names[] = {"involution-z11", "involution-z21", "involution-z22"};
  const char* anchors[] = {"z11* = q^-2 z22 det^-1", "z21* = -q^-1 z21 det^-1", "z22* = z11 det^-1"};
  for (std::size_t i = 0; i < 3; ++i) {
    r.upper(names[i], anchors[i], p, 1e-10,
            [&] { return worst(invs, [&](std::size_t k) { return invs[k][i]; }); });
  }
}

void suite_confluence(const RunConfig& c, Recorder& r) {
  for (AlgebraId id : {AlgebraId::PolMatSym, AlgebraId::CSU2, AlgebraId::UqSl2, AlgebraId::PolC}) {
    const std::string name(algebra_name(id));
    r.exact(name, "rewrite system is locally confluent and proves its relations", "degree 3", [&] {
      const Presentation& p = preset_ref(id);
      const bool mutate = c.mutation == Mutation::DropRule && id == AlgebraId::PolMatSym;
      const auto rep = local_confluence_check(mutate ? p.without_rule(0) : p, 3);
      return static_cast<double>(rep.violations.size() + rep.failed_relations.size());
    });
  }
}

using SuiteFn = void (*)(const RunConfig&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"relations", suite_relations},       {"hopf", suite_hopf},
      {"coaction", suite_coaction},         {"wick", suite_wick},
      {"characters", suite_characters},     {"annihilators", suite_annihilators},
      {"shilov-norm", suite_shilov},        {"dilation", suite_dilation},
      {"inequalities", suite_inequalities}, {"regular-functions", suite_regular},
      {"confluence", suite_confluence},
  };
  return table;
}

}  // namespace

std::string mutation_name(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::DropRule: return "drop-rule";
    case Mutation::DropCoactionSummand: return "drop-coaction-summand";
  }
  return "none";
}

Mutation parse_mutation(const std::string& name) {
  for (Mutation m : {Mutation::None, Mutation::DropRule, Mutation::DropCoactionSummand})
    if (mutation_name(m) == name) return m;
  throw std::invalid_argument("unknown mutation: " + name);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : suites()) out.push_back(n);
    return out;
  }();
  return names;
}

void RunConfig::validate() const {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("q must lie in (0, 1)");
  if (phi_grid < 4) throw std::invalid_argument("phi-grid must be at least 4");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (n1 < 8 || n2 < 8 || n3 < 8) throw std::invalid_argument("truncations must be at least 8");
  if (static_cast<long>(n3) * n3 * n3 > kMaxDimension || static_cast<long>(n2) * n2 > kMaxDimension)
    throw std::invalid_argument("truncation exceeds the dimension cap");
  for (const auto& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw std::invalid_argument("unknown suite: " + s);
  }
}

std::vector<CheckEntry> run_suite(const std::string& suite, const RunConfig& config) {
  for (const auto& [name, fn] : suites()) {
    if (name != suite) continue;
    std::vector<CheckEntry> out;
    Recorder r(name, out);
    fn(config, r);
    return out;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

Report run(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.config = config;
  for (const auto& s : config.suites) {
    auto entries = run_suite(s, config);
    rep.entries.insert(rep.entries.end(), entries.begin(), entries.end());
  }
  std::sort(rep.entries.begin(), rep.entries.end(), [](const CheckEntry& a, const CheckEntry& b) {
    return std::tie(a.name, a.params) < std::tie(b.name, b.params);
  });
  for (const auto& e : rep.entries) (e.pass ? rep.passed : rep.failed) += 1;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  const RunConfig& c = r.config;
  json checks = json::array();
  for (const auto& e : r.entries) {
    json j = {{"suite", e.suite}, {"name", e.name},   {"anchor", e.anchor}, {"params", e.params},
              {"value", e.value}, {"tol", e.tol},     {"pass", e.pass}};
    if (std::isinf(e.value)) j["value"] = e.value > 0 ? "inf" : "-inf";
    if (!e.error.empty()) j["error"] = e.error;
    checks.push_back(std::move(j));
  }
  return {
      {"config",
       {{"q", c.q}, {"n1", c.n1}, {"n2", c.n2}, {"n3", c.n3}, {"phi_grid", c.phi_grid}, {"tol", c.tol},
        {"seed", c.seed}, {"suites", c.suites}, {"mutation", mutation_name(c.mutation)}}},
      {"checks", std::move(checks)},
      {"summary", {{"total", r.entries.size()}, {"passed", r.passed}, {"failed", r.failed}, {"ok", r.ok()}}},
      {"wall_time_s", r.wall_time},
  };
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  const auto& c = j.at("config");
  r.config.q = c.at("q").get<double>();
  r.config.n1 = c.at("n1").get<int>();
  r.config.n2 = c.at("n2").get<int>();
  r.config.n3 = c.at("n3").get<int>();
  r.config.phi_grid = c.at("phi_grid").get<int>();
  r.config.tol = c.at("tol").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.suites = c.at("suites").get<std::vector<std::string>>();
  r.config.mutation = parse_mutation(c.at("mutation").get<std::string>());
  for (const auto& e : j.at("checks")) {
    CheckEntry x;
    x.suite = e.at("suite").get<std::string>();
    x.name = e.at("name").get<std::string>();
    x.anchor = e.at("anchor").get<std::string>();
    x.params = e.at("params").get<std::string>();
    if (e.at("value").is_string()) {
      x.value = e.at("value").get<std::string>() == "inf" ? std::numeric_limits<double>::infinity()
                                                          : -std::numeric_limits<double>::infinity();
    } else {
      x.value = e.at("value").get<double>();
    }
    x.tol = e.at("tol").get<double>();
    x.pass = e.at("pass").get<bool>();
    x.error = e.value("error", std::string{});
    r.entries.push_back(std::move(x));
  }
  r.passed = j.at("summary").at("passed").get<std::size_t>();
  r.failed = j.at("summary").at("failed").get<std::size_t>();
  r.wall_time = j.at("wall_time_s").get<double>();
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    os << (e.pass ? "PASS " : "FAIL ") << e.name;
    if (!e.params.empty()) os << " [" << e.params << "]";
    os << " value=" << fmt(e.value) << " tol=" << fmt(e.tol);
    if (!e.error.empty()) os << " error=" << e.error;
    os << "  (" << e.anchor << ")\n";
  }
  os << "summary: " << r.entries.size() << " checks, " << r.passed << " passed, " << r.failed << " failed, "
     << fmt(r.wall_time) << " s\n";
  return os.str();
}

}  // namespace qshilov
