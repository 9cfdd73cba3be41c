// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "opoly/density.hpp"
#include "opoly/hfun.hpp"
#include "opoly/orthopoly.hpp"
#include "opoly/painleve.hpp"
#include "opoly/qms.hpp"

using namespace opoly;

namespace {

constexpr Bits p = 256;

// Tolerances.
constexpr double d2_closed_form_tol = 1e-30;
constexpr double h_assembly_tol = 1e-20;
constexpr double h_quadrature_tol = 1e-12;
constexpr double normalization_tol = 1e-3;
constexpr double ode_tol = 1e-20;
constexpr double orthogonality_tol = 1e-10;
constexpr double qms_tol = 1e-10;
constexpr double dh_tol = 1e-8;
constexpr Bits horizon_max_bits = 1024;
constexpr long horizon_n = 100;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string sci(const XReal& x) { return x.with_precision(53).to_string(3); }

XReal x_of(const char* text) { return XReal(std::string_view(text), p); }

XReal rel(const XReal& x, const XReal& y) { return abs(x - y) / abs(y); }

XReal modulus(const XComplex& z) { return hypot(z.real(), z.imag()); }

XComplex times(const XComplex& x, const XComplex& y) {
  return XComplex(x.real() * y.real() - x.imag() * y.imag(),
                  x.real() * y.imag() + x.imag() * y.real());
}

const std::vector<const char*> a_grid{"0.5", "1", "2", "5"};

void closed_form_d2(Outcome& out) {
  XReal worst(0L, p);
  for (const char* as : {"1/2", "1", "2"}) {
    XReal a = x_of(as);
    auto trace = painleve::run(2, a, 200, p);
    out.require(trace.validated_to == 200, "validated_to");
    for (long n = 0; n <= 200; ++n) {
      worst = max(worst, rel(trace.V[n], (n + 1) * a / (a * a + 1)));
    }
  }
  // The closed form against norms obtained from quadrature moments.
  XReal a(1L, p);
  auto gs = ortho::gram_schmidt_oracle(density::PotentialSpec::canonical(2, a), 8, p);
  XReal oracle(0L, p);
  for (long n = 0; n < 8; ++n) {
    oracle = max(oracle, rel(gs.h[n + 1] / gs.h[n], XReal(n + 1, p) / 2));
  }
  out.require(worst < d2_closed_form_tol, "V_n closed form");
  out.require(oracle < 1e-20, "Gram-Schmidt ratios");
  out.detail << "max rel err n<=200: " << sci(worst)
             << "; vs moment oracle (a=1, n<8): " << sci(oracle);
}

void closed_form_d1(Outcome& out) {
  XReal worst(0L, p);
  XReal a = x_of("0.75");
  auto trace = painleve::run(1, a, 20, p);
  auto basis = ortho::build(trace, 20);
  XComplex c(XReal(0L, p), -1 / a);
  for (long n = 0; n <= 20; ++n) {
    auto dense = basis.polys[n].dense();
    XComplex power(XReal(1L, p), XReal(0L, p));
    XReal binom(1L, p);
    for (long j = 0; j <= n; ++j) {
      XComplex e(power.real() * binom, power.imag() * binom);
      XComplex diff(dense[n - j].real() - e.real(), dense[n - j].imag() - e.imag());
      worst = max(worst, modulus(diff) / (modulus(e) + 1));
      power = times(power, c);
      binom = binom * (n - j) / (j + 1);
    }
  }
  out.require(worst < XReal::pow2(32 - p, p), "coefficients");
  // V_n = (n+1)/a from the empty sum, against moment ratios and against the
  // reading V_n = (n+1) a.
  auto gs = ortho::gram_schmidt_oracle(density::PotentialSpec::canonical(1, a), 6, p);
  XReal vs_oracle(0L, p);
  XReal alternative(0L, p);
  for (long n = 0; n < 6; ++n) {
    XReal ratio = gs.h[n + 1] / gs.h[n];
    vs_oracle = max(vs_oracle, rel(trace.V[n], ratio));
    alternative = max(alternative, rel((n + 1) * a, ratio));
  }
  out.require(vs_oracle < 1e-20, "V_n = (n+1)/a vs moment ratios");
  out.detail << "max coeff err n<=20: " << sci(worst) << "; V_n=(n+1)/a vs moment ratios: "
             << sci(vs_oracle) << "; reading V_n=(n+1)a off by " << sci(alternative);
}

void h_triple_d3(Outcome& out) {
  XReal pair(0L, p);
  XReal quad(0L, p);
  for (const char* as : a_grid) {
    XReal a = x_of(as);
    XReal assembly = hfun::h_eval(3, a, p).values[0];
    XReal closed = hfun::h_closed(3, a, p);
    XReal laplace = hfun::h_laplace(3, a, p).value;
    pair = max(pair, rel(assembly, closed));
    quad = max(quad, max(rel(laplace, assembly), rel(laplace, closed)));
  }
  out.require(pair < h_assembly_tol, "assembly vs Bessel");
  out.require(quad < h_quadrature_tol, "quadrature");
  out.detail << "assembly vs Bessel: " << sci(pair) << "; vs Laplace quadrature: " << sci(quad);
}

void h_d4(Outcome& out) {
  XReal worst(0L, p);
  for (const char* as : a_grid) {
    XReal a = x_of(as);
    worst = max(worst, rel(hfun::h_eval(4, a, p).values[0], hfun::h_closed(4, a, p)));
  }
  out.require(worst < h_assembly_tol, "assembly vs J products");
  out.detail << "assembly vs J(+-1/4) products: " << sci(worst);
}

void normalization(Outcome& out) {
  XReal a(50L, p);
  for (int d = 2; d <= 5; ++d) {
    XReal gap = abs(a * hfun::h_derivatives(d, a, 0, p)[0] - XReal::pi(p));
    out.require(gap < normalization_tol, "d=" + std::to_string(d));
    out.detail << "d=" << d << ": " << sci(gap) << " ";
  }
}

void ode(Outcome& out) {
  XReal worst(0L, p);
  for (int d = 3; d <= 5; ++d) {
    for (const char* as : {"0.5", "1", "2"}) worst = max(worst, hfun::ode_residual(d, x_of(as), p));
  }
  out.require(worst < ode_tol, "residual");
  out.detail << "max residual: " << sci(worst);
}

void orthogonality(Outcome& out) {
  const long N = 15;
  auto basis = ortho::build(painleve::run(3, XReal(1L, p), N, p), N);
  auto gram = density::gram(basis.spec, N, p);
  XMatrix R = ortho::orthogonality_residual(basis, gram);
  XReal off(0L, p);
  XReal diag(0L, p);
  bool signs = true;
  for (long n = 0; n <= N; ++n) {
    for (long m = 0; m <= N; ++m) {
      if (n == m) {
        diag = max(diag, abs(R(n, n)));
        // R(n, n) = (P_n, P_n) / (rho(n) h_n) - 1 > -1 means sign (P_n, P_n) = rho(n).
        signs = signs && R(n, n) > -1;
      } else {
        off = max(off, R(n, m));
      }
    }
  }
  auto gs = ortho::gram_schmidt(gram, basis.spec);
  for (long n = 0; n <= N; ++n) signs = signs && gs.signs[n] == density::rho(3, n);
  out.require(off < orthogonality_tol, "off-diagonal");
  out.require(diag < orthogonality_tol, "diagonal");
  out.require(signs, "signs");
  out.detail << "off-diagonal: " << sci(off) << "; diagonal: " << sci(diag)
             << "; signs = rho(n) for n<=15: " << (signs ? "yes" : "no");
}

void dual_construction(Outcome& out) {
  struct Case {
    int d;
    const char* a;
  };
  for (Case c : {Case{3, "2"}, Case{4, "1"}}) {
    XReal a = x_of(c.a);
    auto rec = ortho::build(painleve::run(c.d, a, 8, p), 8);
    auto gs = ortho::gram_schmidt_oracle(rec.spec, 8, p);
    XReal ratio(0L, p);
    for (long n = 0; n <= 8; ++n) {
      for (std::size_t j = 0; j < gs.polys[n].coeffs.size(); ++j) {
        const XComplex& x = rec.polys[n].coeffs[j];
        const XComplex& y = gs.polys[n].coeffs[j];
        XReal diff = modulus(XComplex(x.real() - y.real(), x.imag() - y.imag()));
        XReal bound = rec.coeff_errors[n][j] + gs.coeff_errors[n][j];
        if (!diff.is_zero()) ratio = max(ratio, diff / bound);
      }
    }
    out.require(ratio <= 1, "d=" + std::to_string(c.d));
    out.detail << "d=" << c.d << " a=" << c.a << " max diff/bound: " << sci(ratio) << " ";
  }
}

void positivity_horizon(Outcome& out) {
  XReal a(1L, p);
  bool reached = false;
  for (Bits bits = 256; bits <= horizon_max_bits && !reached; bits *= 2) {
    auto trace = painleve::run(3, a.with_precision(bits), horizon_n, bits);
    bool positive = true;
    for (const auto& v : trace.V) positive = positive && v > 0;
    XReal window(0L, bits);
    for (const auto& r : painleve::window_residuals(trace)) window = max(window, r);
    out.detail << bits << " bits: validated_to=" << trace.validated_to << " ";
    if (trace.validated_to >= horizon_n) {
      reached = true;
      out.require(positive, "positivity");
      out.require(window < XReal::pow2(8 - bits, bits), "window residual");
      out.detail << "(positive, max window residual " << sci(window) << ")";
    }
  }
  out.require(reached, "n=100 not validated at 1024 bits");
  out.detail << "; horizon:";
  for (Bits bits : {128, 256, 512, 1024}) {
    auto trace = painleve::run(3, a.with_precision(bits), 4000, bits);
    out.detail << " " << bits << " bits -> " << trace.validated_to;
  }
}

void qms_identity(Outcome& out) {
  struct Case {
    int d;
    const char* a;
  };
  for (Case c : {Case{3, "1"}, Case{4, "1"}, Case{4, "2"}}) {
    auto ops = qms::build_operators(painleve::run(c.d, x_of(c.a), 30, p), 30);
    XReal q = qms::qms_residual(ops.op, c.d);
    XReal lm = qms::lm_commutator_residual(ops.op, ops.M, ops.L);
    out.require(q < qms_tol && lm < qms_tol, "d=" + std::to_string(c.d) + " a=" + c.a);
    out.detail << "d=" << c.d << " a=" << c.a << ": " << sci(q) << ", [L,M] " << sci(lm) << "; ";
  }
}

void dh_identity(Outcome& out) {
  XReal a(1L, p);
  XReal worst(0L, p);
  for (long n = 2; n <= 10; ++n) worst = max(worst, painleve::dh_residual(3, a, n, p));
  XReal low = max(painleve::dh_residual(3, a, 0, p), painleve::dh_residual(3, a, 1, p));
  XReal d4(0L, p);
  for (long n = 3; n <= 10; ++n) d4 = max(d4, painleve::dh_residual(4, a, n, p));
  out.require(worst < dh_tol, "d=3");
  out.detail << "d=3, 2<=n<=10: " << sci(worst) << "; d=3, n<2 (second term dropped): " << sci(low)
             << "; d=4, 3<=n<=10 (reported): " << sci(d4);
}

void gram_minor_monitoring(Outcome& out) {
  XReal smallest(1L, p);
  int cases = 0;
  for (int d = 1; d <= 5; ++d) {
    for (const char* as : a_grid) {
      cli::RunConfig cfg;
      cfg.command = cli::Command::gram;
      cfg.d = d;
      cfg.a = as;
      cfg.N = 12;
      cfg.precision_bits = p;
      cli::Report r = cli::run(cfg);
      std::string tag = "d=" + std::to_string(d) + " a=" + as;
      out.require(r.exit_code == cli::exit_ok, tag + " exit " + std::to_string(r.exit_code));
      if (r.exit_code == cli::exit_ok) {
        XReal pivot(std::string_view(r.meta["min_relative_pivot"].get<std::string>()), 53);
        smallest = min(smallest, pivot.with_precision(p));
      } else if (r.meta.contains("certificate")) {
        out.detail << "certificate " << r.meta["certificate"].dump() << " ";
      }
      ++cases;
    }
  }
  out.detail << cases << " cases, smallest relative pivot " << sci(smallest) << " (threshold "
             << sci(XReal::pow2(-p / 2, p)) << ")";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"closed form d=2", closed_form_d2},
      {"closed form d=1", closed_form_d1},
      {"h triple agreement d=3", h_triple_d3},
      {"h agreement d=4", h_d4},
      {"normalization limit", normalization},
      {"ODE certification", ode},
      {"end-to-end orthogonality", orthogonality},
      {"dual construction", dual_construction},
      {"positivity horizon", positivity_horizon},
      {"QMS operator identity", qms_identity},
      {"dh_n/da identity", dh_identity},
      {"Gram minor monitoring", gram_minor_monitoring},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, body] : criteria) {
    ++index;
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "[exception: " << e.what() << "]";
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s %2d %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", index, name,
                out.detail.str().c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
