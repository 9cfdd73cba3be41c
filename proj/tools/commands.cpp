#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "opoly/density.hpp"
#include "opoly/errors.hpp"
#include "opoly/hfun.hpp"
#include "opoly/orthopoly.hpp"
#include "opoly/painleve.hpp"
#include "opoly/qms.hpp"

namespace opoly::cli {

using nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Model {
  int d = 3;
  long N = 0;
  Bits p = default_precision_bits;
  XReal a;
  std::optional<XReal> t;
  XReal a_canonical;
  std::optional<XReal> lambda;

  density::PotentialSpec spec() const {
    return t ? density::PotentialSpec::with_strength(d, a, *t)
             : density::PotentialSpec::canonical(d, a);
  }
};

XReal parse_decimal(const std::string& text, Bits p, const char* name) {
  try {
    return XReal(std::string_view(text), p);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("--") + name + ": not a decimal number: '" + text + "'");
  }
}

Model resolve(const RunConfig& c, bool allow_zero_a) {
  if (c.d < 1) throw UsageError("--d must be at least 1");
  if (c.precision_bits < 64) throw UsageError("--precision-bits must be at least 64");
  if (c.N < 0) throw UsageError("--N must be non-negative");
  Model m;
  m.d = c.d;
  m.N = c.N;
  m.p = c.precision_bits;
  m.a = parse_decimal(c.a, m.p, "a");
  if (allow_zero_a ? m.a < 0 : !(m.a > 0)) {
    throw UsageError(allow_zero_a ? "--a must be non-negative" : "--a must be positive");
  }
  m.a_canonical = m.a;
  if (c.t) {
    m.t = parse_decimal(*c.t, m.p, "t");
    if (!(*m.t > 0)) throw UsageError("--t must be positive");
    density::RescaleResult r = density::rescale(m.a, *m.t, m.d);
    m.a_canonical = r.a_canonical;
    m.lambda = r.lambda;
  }
  return m;
}

XReal ulp_error(const XReal& x, Bits p) { return abs(x) * XReal::pow2(-p, p); }

XReal modulus(const XComplex& z) { return hypot(z.real(), z.imag()); }

ordered_json base_meta(const RunConfig& c, const Model& m) {
  ordered_json meta;
  meta["command"] = command_name(c.command);
  meta["d"] = m.d;
  meta["a"] = c.a;
  if (c.t) meta["t"] = *c.t;
  meta["N"] = m.N;
  meta["precision_bits"] = m.p;
  if (m.lambda) {
    meta["a_canonical"] = decimal(m.a_canonical, ulp_error(m.a_canonical, m.p - 8), m.p);
    meta["lambda"] = decimal(*m.lambda, ulp_error(*m.lambda, m.p - 8), m.p);
  }
  return meta;
}

ordered_json complex_decimal(const XComplex& z, const XReal& error, Bits p) {
  return ordered_json{{"re", decimal(z.real(), error, p)}, {"im", decimal(z.imag(), error, p)}};
}

// Relative error of h_n from the error of h(a) and the recurrence estimates.
std::vector<XReal> h_relative_errors(const painleve::RecurrenceTrace& trace, const Model& m) {
  std::vector<XReal> errs;
  XReal h0 = hfun::h_derivatives(m.d, trace.spec.a, 0, m.p, &errs).front();
  XReal rel = errs.front() / abs(h0) + XReal::pow2(-m.p, m.p);
  std::vector<XReal> out{rel};
  for (std::size_t k = 0; k < trace.V.size(); ++k) {
    rel += trace.V_errors[k] / trace.V[k];
    out.push_back(rel);
  }
  return out;
}

Report cmd_hfun(const RunConfig& c) {
  Model m = resolve(c, true);
  Report r;
  r.meta = base_meta(c, m);
  const XReal& a = m.a_canonical;
  int order = std::max(m.d - 2, 0);
  std::vector<XReal> errs;
  std::vector<XReal> values = hfun::h_derivatives(m.d, a, order, m.p, &errs);
  ordered_json row;
  row["a"] = c.a;
  for (int k = 0; k <= order; ++k) {
    XReal v = values[k];
    XReal e = errs[k];
    if (m.lambda) {
      // h^(k)(a, t) = lambda^(2 + 2k) h^(k)(a lambda^2, 1/d)
      XReal s = pow(*m.lambda, 2L * k + 2);
      v *= s;
      e *= s;
    }
    row[k == 0 ? "h" : "h_" + std::to_string(k)] = decimal(v, e, m.p);
  }
  row["ode_residual"] = nullptr;
  row["laplace_delta"] = nullptr;
  row["closed_form_delta"] = nullptr;
  if (a > 0) {
    if (m.d >= 3) row["ode_residual"] = diagnostic(hfun::ode_residual(m.d, a, m.p));
    auto laplace = hfun::h_laplace(m.d, a, m.p);
    row["laplace_delta"] = diagnostic(abs(laplace.value - values[0]) / abs(values[0]));
    if (m.d == 3 || m.d == 4) {
      XReal closed = hfun::h_closed(m.d, a, m.p);
      row["closed_form_delta"] = diagnostic(abs(closed - values[0]) / abs(values[0]));
    }
  }
  r.rows.push_back(std::move(row));
  return r;
}

Report cmd_recurrence(const RunConfig& c) {
  Model m = resolve(c, false);
  Report r;
  r.meta = base_meta(c, m);
  painleve::RecurrenceTrace trace = painleve::run(m.d, m.a_canonical, m.N, m.p);
  if (trace.epsilon_std) {
    r.meta["epsilon_std"] = decimal(*trace.epsilon_std, ulp_error(*trace.epsilon_std, m.p - 8), m.p);
  } else {
    r.meta["epsilon_std"] = nullptr;
  }
  r.meta["validated_to"] = trace.validated_to;
  r.meta["precision_exhausted"] = trace.precision_exhausted;
  std::vector<XReal> window = painleve::window_residuals(trace);
  XReal scale = m.d == 2 ? XReal(1L, m.p)
                         : pow(m.a_canonical, XReal(-2L, m.p) / (m.d - 2));
  for (long n = 0; n <= trace.validated_to; ++n) {
    const XReal& V = trace.V[static_cast<std::size_t>(n)];
    const XReal& e = trace.V_errors[static_cast<std::size_t>(n)];
    ordered_json row;
    row["n"] = n;
    row["V"] = decimal(V, e, m.p);
    if (m.d == 2) {
      row["v"] = nullptr;
    } else {
      row["v"] = decimal(trace.v(n), e * scale, m.p);
    }
    if (n < static_cast<long>(window.size())) {
      row["window_residual"] = diagnostic(window[static_cast<std::size_t>(n)]);
    } else {
      row["window_residual"] = nullptr;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report cmd_opoly(const RunConfig& c) {
  Model m = resolve(c, false);
  Report r;
  r.meta = base_meta(c, m);
  painleve::RecurrenceTrace trace = painleve::run(m.d, m.a_canonical, m.N, m.p);
  ortho::OrthoBasis basis = ortho::build(trace, m.N);
  density::GramMatrix g = density::gram(basis.spec, m.N, m.p);
  XMatrix residual = ortho::orthogonality_residual(basis, g);
  std::vector<XReal> h_rel = h_relative_errors(trace, m);
  ortho::PartitionFunction z = ortho::partition_function(basis, m.N);
  r.meta["validated_to"] = trace.validated_to;
  r.meta["partition_function"] = {
      {"magnitude", decimal(z.magnitude, z.magnitude * h_rel[static_cast<std::size_t>(m.N)] * (m.N + 1), m.p)},
      {"sign", z.sign}};
  for (long n = 0; n <= m.N; ++n) {
    const ortho::SparsePoly& poly = basis.polys[static_cast<std::size_t>(n)];
    const XReal& h = basis.h[static_cast<std::size_t>(n)];
    ordered_json row;
    row["n"] = n;
    row["sign"] = basis.signs[static_cast<std::size_t>(n)];
    row["h"] = decimal(h, h * h_rel[static_cast<std::size_t>(n)], m.p);
    ordered_json coeffs = ordered_json::array();
    for (std::size_t j = 0; j < poly.coeffs.size(); ++j) {
      const XReal& e = basis.coeff_errors[static_cast<std::size_t>(n)][j];
      ordered_json entry{{"power", poly.degree - static_cast<long>(j) * poly.stride}};
      entry.update(complex_decimal(poly.coeffs[j], e, m.p));
      coeffs.push_back(std::move(entry));
    }
    row["coefficients"] = std::move(coeffs);
    XReal off(0L, m.p);
    for (long k = 0; k <= m.N; ++k) {
      if (k != n) off = max(off, abs(residual(n, k)));
    }
    row["orthogonality_diagonal"] = diagnostic(residual(n, n));
    row["orthogonality_off_diagonal"] = diagnostic(off);
    if (n >= 1 && n + m.d - 1 <= m.N) {
      row["l_action_residual"] = diagnostic(ortho::l_action_residual(basis, n, m.p));
    } else {
      row["l_action_residual"] = nullptr;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

ordered_json singular_certificate(const Model& m, const RunConfig& c, const SingularGram& e) {
  ordered_json cert;
  cert["d"] = m.d;
  cert["a"] = c.a;
  if (c.t) cert["t"] = *c.t;
  cert["N"] = m.N;
  cert["precision_bits"] = m.p;
  cert["degree"] = e.degree();
  cert["relative_pivot"] = diagnostic(XReal(e.relative_pivot(), 53));
  cert["threshold"] = diagnostic(XReal::pow2(-m.p / 2, m.p));
  cert["message"] = e.what();
  return cert;
}

Report cmd_gram(const RunConfig& c) {
  Model m = resolve(c, false);
  Report r;
  r.meta = base_meta(c, m);
  density::PotentialSpec spec = m.spec();
  density::GramMatrix g = density::gram(spec, m.N, m.p);
  for (long n = 0; n <= m.N; ++n) {
    ordered_json row;
    row["n"] = n;
    ordered_json entries = ordered_json::array();
    for (long k = n % m.d; k <= m.N; k += m.d) {
      ordered_json entry{{"m", k}};
      entry.update(complex_decimal(g.entries(n, k), g.errors(n, k), m.p));
      entries.push_back(std::move(entry));
    }
    row["entries"] = std::move(entries);
    row["relative_pivot"] = nullptr;
    r.rows.push_back(std::move(row));
  }
  XComplex det = ortho::gram_determinant(g);
  ortho::OrthoBasis gs;
  try {
    gs = ortho::gram_schmidt(g, spec);
  } catch (const SingularGram& e) {
    r.meta["determinant"] = complex_decimal(det, abs(det.real()), m.p);
    r.meta["certificate"] = singular_certificate(m, c, e);
    r.exit_code = exit_singular_gram;
    return r;
  }
  XReal product(1L, m.p);
  for (long n = 0; n <= m.N; ++n) {
    product *= gs.h[static_cast<std::size_t>(n)] * gs.signs[static_cast<std::size_t>(n)];
    r.rows[static_cast<std::size_t>(n)]["relative_pivot"] =
        diagnostic(gs.pivots[static_cast<std::size_t>(n)]);
  }
  // Two routes to det G: pivoted LU on the full matrix and the product of
  // block pivots. Their distance is the reported error.
  XReal det_error = modulus(det - XComplex(product, XReal(0L, m.p))) + ulp_error(product, m.p);
  r.meta["determinant"] = complex_decimal(det, det_error, m.p);
  XReal min_pivot = gs.pivots.front();
  for (const auto& pv : gs.pivots) min_pivot = min(min_pivot, pv);
  r.meta["min_relative_pivot"] = diagnostic(min_pivot);
  return r;
}

Report cmd_qms(const RunConfig& c) {
  Model m = resolve(c, false);
  if (m.d <= 2) throw UsageError("qms needs d >= 3");
  Report r;
  r.meta = base_meta(c, m);
  painleve::RecurrenceTrace trace = painleve::run(m.d, m.a_canonical, m.N, m.p);
  qms::Operators ops = qms::build_operators(trace, m.N);
  r.meta["epsilon"] = decimal(ops.op.epsilon, ulp_error(ops.op.epsilon, m.p - 8), m.p);
  if (m.N >= 2 * m.d) {
    r.meta["interior_block"] = "0.." + std::to_string(m.N - m.d);
    r.meta["qms_residual"] = diagnostic(qms::qms_residual(ops.op, m.d));
    r.meta["lm_commutator_residual"] = diagnostic(qms::lm_commutator_residual(ops.op, ops.M, ops.L));
  } else {
    r.meta["interior_block"] = nullptr;
    r.meta["qms_residual"] = nullptr;
    r.meta["lm_commutator_residual"] = nullptr;
  }
  XReal scale = pow(m.a_canonical, XReal(-2L, m.p) / (m.d - 2));
  for (long n = 0; n < m.N; ++n) {
    const XReal& w = ops.op.w[static_cast<std::size_t>(n)];
    XReal rel = trace.V_errors[static_cast<std::size_t>(n)] / trace.V[static_cast<std::size_t>(n)];
    ordered_json row;
    row["n"] = n;
    row["w"] = decimal(w, w * rel / 2, m.p);
    row["v"] = decimal(trace.v(n), trace.V_errors[static_cast<std::size_t>(n)] * scale, m.p);
    r.rows.push_back(std::move(row));
  }
  return r;
}

struct Check {
  std::string name;
  XReal value;
  XReal threshold;
  bool pass;
};

Report cmd_verify(const RunConfig& c) {
  Model m = resolve(c, false);
  Report r;
  r.meta = base_meta(c, m);
  const int d = m.d;
  const Bits p = m.p;
  const XReal& a = m.a_canonical;
  XReal tight = XReal::pow2(-p / 2, p);
  XReal oracle = XReal(std::string_view("1e-12"), p);
  XReal loose = XReal(std::string_view("1e-10"), p);
  bool all_pass = true;

  auto record = [&](const std::string& name, const std::function<XReal()>& measure,
                    const XReal& threshold) {
    ordered_json row;
    row["check"] = name;
    try {
      XReal value = measure();
      bool pass = value <= threshold;
      row["value"] = diagnostic(value);
      row["threshold"] = diagnostic(threshold);
      row["pass"] = pass;
      all_pass = all_pass && pass;
    } catch (const SingularGram&) {
      throw;
    } catch (const std::exception& e) {
      row["value"] = nullptr;
      row["threshold"] = diagnostic(threshold);
      row["pass"] = false;
      row["error"] = e.what();
      all_pass = false;
    }
    r.rows.push_back(std::move(row));
  };

  density::PotentialSpec spec = density::PotentialSpec::canonical(d, a);
  record("density_hermiticity", [&] {
    long top = std::min<long>(m.N, 2 * d);
    XReal worst(0L, p);
    for (long n = 0; n <= top; ++n) {
      for (long k = n; k <= top; k += d) {
        XComplex x = density::moment(spec, n, k, p);
        XComplex y = density::moment(spec, k, n, p);
        worst = max(worst, modulus(x - std::conj(y)) / modulus(x));
      }
    }
    return worst;
  }, tight);

  std::vector<XReal> h_errs;
  XReal h = hfun::h_derivatives(d, a, 0, p, &h_errs).front();
  record("h_laplace_agreement", [&] {
    return abs(hfun::h_laplace(d, a, p).value - h) / abs(h);
  }, oracle);
  if (d == 3 || d == 4) {
    record("h_closed_form_agreement", [&] { return abs(hfun::h_closed(d, a, p) - h) / abs(h); },
           XReal(std::string_view("1e-20"), p));
  }
  if (d >= 3) {
    record("h_ode_residual", [&] { return hfun::ode_residual(d, a, p); },
           XReal(std::string_view("1e-20"), p));
  }

  painleve::RecurrenceTrace trace = painleve::run(d, a, m.N, p);
  r.meta["validated_to"] = trace.validated_to;
  record("recurrence_window_residual", [&] {
    XReal worst(0L, p);
    for (const auto& x : painleve::window_residuals(trace)) worst = max(worst, x);
    if (trace.precision_exhausted) throw PrecisionError("recurrence not validated up to N");
    return worst;
  }, tight);

  ortho::OrthoBasis basis = ortho::build(trace, m.N);
  density::GramMatrix g = density::gram(spec, m.N, p);
  XMatrix residual = ortho::orthogonality_residual(basis, g);
  record("orthogonality_off_diagonal", [&] {
    XReal worst(0L, p);
    for (long n = 0; n <= m.N; ++n) {
      for (long k = 0; k <= m.N; ++k) {
        if (n != k) worst = max(worst, abs(residual(n, k)));
      }
    }
    return worst;
  }, loose);
  record("orthogonality_diagonal_sign_pattern", [&] {
    XReal worst(0L, p);
    for (long n = 0; n <= m.N; ++n) worst = max(worst, abs(residual(n, n)));
    return worst;
  }, loose);
  if (m.N >= d) {
    record("l_action_residual", [&] {
      XReal worst(0L, p);
      for (long n = 1; n + d - 1 <= m.N; ++n) worst = max(worst, ortho::l_action_residual(basis, n, p));
      return worst;
    }, tight);
  }

  ortho::OrthoBasis gs;
  try {
    gs = ortho::gram_schmidt(g, spec);
  } catch (const SingularGram& e) {
    r.meta["certificate"] = singular_certificate(m, c, e);
    r.meta["all_pass"] = false;
    r.exit_code = exit_singular_gram;
    return r;
  }
  record("gram_schmidt_signs", [&] {
    long mismatches = 0;
    for (long n = 0; n <= m.N; ++n) {
      if (gs.signs[static_cast<std::size_t>(n)] != density::rho(d, n)) ++mismatches;
    }
    return XReal(mismatches, p);
  }, XReal(0L, p));
  record("dual_construction", [&] {
    // Largest coefficient distance in units of the combined error bound.
    XReal worst(0L, p);
    for (long n = 0; n <= m.N; ++n) {
      const auto& x = basis.polys[static_cast<std::size_t>(n)];
      const auto& y = gs.polys[static_cast<std::size_t>(n)];
      for (std::size_t j = 0; j < x.coeffs.size(); ++j) {
        XReal bound = basis.coeff_errors[static_cast<std::size_t>(n)][j] +
                      gs.coeff_errors[static_cast<std::size_t>(n)][j];
        XReal gap = modulus(x.coeffs[j] - y.coeffs[j]);
        if (bound.is_zero()) {
          if (!gap.is_zero()) return XReal(2L, p);
          continue;
        }
        worst = max(worst, gap / bound);
      }
    }
    return worst;
  }, XReal(1L, p));
  record("partition_function_vs_determinant", [&] {
    ortho::PartitionFunction z = ortho::partition_function(basis, m.N);
    XComplex det = ortho::gram_determinant(g);
    XReal signed_z = z.magnitude * z.sign;
    return modulus(det - XComplex(signed_z, XReal(0L, p))) / abs(signed_z);
  }, XReal::pow2(-p / 4, p));
  XReal min_pivot = gs.pivots.front();
  for (const auto& pv : gs.pivots) min_pivot = min(min_pivot, pv);
  r.meta["min_relative_pivot"] = diagnostic(min_pivot);

  if (d >= 3 && m.N >= 2 * d) {
    qms::Operators ops = qms::build_operators(trace, m.N);
    record("qms_commutator", [&] { return qms::qms_residual(ops.op, d); }, loose);
    record("lm_commutator", [&] { return qms::lm_commutator_residual(ops.op, ops.M, ops.L); }, loose);
  }
  r.meta["all_pass"] = all_pass;
  if (!all_pass) r.exit_code = exit_numerical;
  return r;
}

std::string csv_cell(const ordered_json& v) {
  std::string text;
  if (v.is_null()) return "";
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_boolean()) {
    text = v.get<bool>() ? "true" : "false";
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void flatten(const ordered_json& v, const std::string& prefix, ordered_json& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else {
    out[prefix] = v;
  }
}

}  // namespace

Bits default_precision() {
  const char* env = std::getenv("OPOLY_DEFAULT_PRECISION");
  if (env == nullptr) return default_precision_bits;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 64) return default_precision_bits;
  return static_cast<Bits>(v);
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::hfun, Command::recurrence, Command::opoly, Command::gram, Command::qms,
                    Command::verify}) {
    if (command_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::hfun: return "hfun";
    case Command::recurrence: return "recurrence";
    case Command::opoly: return "opoly";
    case Command::gram: return "gram";
    case Command::qms: return "qms";
    case Command::verify: return "verify";
  }
  return "";
}

ordered_json decimal(const XReal& value, const XReal& error, Bits p) {
  int max_digits = std::max(1, static_cast<int>(std::floor((p - 1) * 0.30102999566398120)));
  int digits = max_digits;
  if (!error.is_zero() && !value.is_zero()) {
    double lost = (log2(abs(value)) - log2(abs(error))).to_double() * 0.30102999566398120;
    digits = std::clamp(static_cast<int>(std::floor(lost)), 1, max_digits);
  }
  return ordered_json{{"value", value.to_string(digits)},
                      {"digits", digits},
                      {"error", error.with_precision(53).to_string(2)}};
}

ordered_json diagnostic(const XReal& value) { return value.with_precision(53).to_string(3); }

Report run(const RunConfig& config) {
  auto failed = [&](int code, const char* type, const std::string& message) {
    Report r;
    r.meta["command"] = command_name(config.command);
    r.meta["error"] = {{"type", type}, {"message", message}};
    r.exit_code = code;
    return r;
  };
  try {
    switch (config.command) {
      case Command::hfun: return cmd_hfun(config);
      case Command::recurrence: return cmd_recurrence(config);
      case Command::opoly: return cmd_opoly(config);
      case Command::gram: return cmd_gram(config);
      case Command::qms: return cmd_qms(config);
      case Command::verify: return cmd_verify(config);
    }
  } catch (const UsageError& e) {
    return failed(exit_usage, "usage", e.what());
  } catch (const SingularGram& e) {
    Report r = failed(exit_singular_gram, "singular_gram", e.what());
    r.meta["degree"] = e.degree();
    return r;
  } catch (const DomainError& e) {
    return failed(exit_usage, "domain", e.what());
  } catch (const PositivityLost& e) {
    return failed(exit_numerical, "positivity_lost", e.what());
  } catch (const PrecisionError& e) {
    return failed(exit_numerical, "precision", e.what());
  } catch (const NumericalError& e) {
    return failed(exit_numerical, "numerical", e.what());
  }
  return failed(exit_usage, "usage", "unknown command");
}

std::string to_json(const Report& report) {
  ordered_json doc;
  doc["meta"] = report.meta;
  doc["rows"] = report.rows;
  return doc.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  ordered_json meta;
  flatten(report.meta, "", meta);
  for (auto it = meta.begin(); it != meta.end(); ++it) {
    out << "# " << it.key() << "=" << csv_cell(it.value()) << "\n";
  }
  std::vector<ordered_json> rows;
  std::vector<std::string> columns;
  for (const auto& row : report.rows) {
    ordered_json flat;
    flatten(row, "", flat);
    for (auto it = flat.begin(); it != flat.end(); ++it) {
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) {
        columns.push_back(it.key());
      }
    }
    rows.push_back(std::move(flat));
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  if (!columns.empty()) out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ",";
      if (row.contains(columns[i])) out << csv_cell(row[columns[i]]);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace opoly::cli
