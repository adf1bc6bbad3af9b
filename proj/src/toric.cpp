#include "polyprime/toric.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "polyprime/shape_io.hpp"

namespace polyprime {

ExponentMatrix ExponentMatrix::from_rows(std::vector<std::vector<long>> rows) {
  ExponentMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m.cols) throw std::invalid_argument("ragged exponent matrix");
  m.entries = std::move(rows);
  return m;
}

ExponentMatrix ExponentMatrix::of(const ToricMap& phi) {
  ExponentMatrix m;
  m.rows = phi.target.size();
  m.cols = phi.source.size();
  m.entries.assign(m.rows, std::vector<long>(m.cols, 0));
  for (std::size_t c = 0; c < m.cols; ++c)
    for (std::size_t r = 0; r < m.rows; ++r) m.entries[r][c] = phi.images[c].exps[r];
  return m;
}

std::vector<std::uint64_t> ExponentMatrix::column_weights() const {
  std::vector<std::uint64_t> w(cols, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (entries[r][c] < 0) throw std::invalid_argument("exponent matrix has a negative entry");
      w[c] += static_cast<std::uint64_t>(entries[r][c]);
    }
  return w;
}

namespace {

// Row-style Hermite normal form of a list of integer vectors (in place);
// zero rows are dropped.
void hermite_rows(std::vector<IntVector>& rows) {
  if (rows.empty()) return;
  const std::size_t n = rows.front().size();
  std::size_t top = 0;
  for (std::size_t col = 0; col < n && top < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t k = col; k < n; ++k) rows[r][k] -= q * rows[top][k];
        clean = clean && rows[r][col] == 0;
      }
      if (clean) break;
    }
    if (top >= rows.size() || rows[top][col] == 0) continue;
    if (rows[top][col] < 0)
      for (auto& x : rows[top]) x = -x;
    for (std::size_t r = 0; r < top; ++r) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
      if (q != 0)
        for (std::size_t k = col; k < n; ++k) rows[r][k] -= q * rows[top][k];
    }
    ++top;
  }
  rows.resize(top);
}

}  // namespace

std::vector<IntVector> integer_kernel(const ExponentMatrix& m) {
  const std::size_t n = m.cols, t = m.rows;
  // Column j of the augmented matrix: (M e_j ; e_j).
  std::vector<IntVector> col(n, IntVector(t + n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < t; ++r) col[j][r] = m.entries[r][j];
    col[j][t + j] = 1;
  }
  std::size_t k = 0;
  for (std::size_t r = 0; r < t && k < n; ++r) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = k; c < n; ++c)
        if (col[c][r] != 0 && (best == n || abs(col[c][r]) < abs(col[best][r]))) best = c;
      if (best == n) break;
      std::swap(col[k], col[best]);
      bool clean = true;
      for (std::size_t c = k + 1; c < n; ++c) {
        if (col[c][r] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), col[c][r].get_mpz_t(), col[k][r].get_mpz_t());
        for (std::size_t i = 0; i < t + n; ++i) col[c][i] -= q * col[k][i];
        clean = clean && col[c][r] == 0;
      }
      if (clean) {
        ++k;
        break;
      }
    }
  }
  std::vector<IntVector> basis;
  for (std::size_t c = k; c < n; ++c) basis.emplace_back(col[c].begin() + t, col[c].end());
  hermite_rows(basis);
  return basis;
}

std::vector<Binomial> lattice_basis_ideal(const std::vector<IntVector>& basis) {
  std::vector<Binomial> out;
  for (const IntVector& u : basis) {
    Binomial f{Monomial(u.size()), Monomial(u.size())};
    bool zero = true;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      zero = false;
      mpz_class a = abs(u[i]);
      if (a > std::numeric_limits<Exponent>::max()) throw OverflowError("kernel entry exceeds exponent range");
      (u[i] > 0 ? f.plus : f.minus).exps[i] = static_cast<Exponent>(a.get_ui());
    }
    if (zero) throw std::invalid_argument("zero lattice vector");
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Binomial> quadratic_kernel_binomials(const ExponentMatrix& m) {
  const std::size_t n = m.cols;
  auto column = [&](std::size_t c) {
    std::vector<long> v(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) v[r] = m.entries[r][c];
    return v;
  };
  std::vector<Binomial> out;
  auto chain = [&](const std::map<std::vector<long>, std::vector<Monomial>>& groups) {
    for (const auto& [image, monos] : groups)
      for (std::size_t k = 1; k < monos.size(); ++k) {
        Binomial f = remove_common_factor({monos[0], monos[k]});
        if (!f.is_zero()) out.push_back(std::move(f));
      }
  };
  std::map<std::vector<long>, std::vector<Monomial>> linear, quadratic;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial x(n);
    x.exps[i] = 1;
    linear[column(i)].push_back(x);
    for (std::size_t j = i; j < n; ++j) {
      Monomial y(n);
      y.exps[i] += 1;
      y.exps[j] += 1;
      auto v = column(i);
      auto w = column(j);
      for (std::size_t r = 0; r < m.rows; ++r) v[r] += w[r];
      quadratic[v].push_back(y);
    }
  }
  chain(linear);
  chain(quadratic);
  return out;
}

bool in_kernel(const ExponentMatrix& m, const Binomial& f) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    long s = 0;
    for (std::size_t c = 0; c < m.cols; ++c)
      s += m.entries[r][c] * (static_cast<long>(f.plus.exps[c]) - static_cast<long>(f.minus.exps[c]));
    if (s != 0) return false;
  }
  return true;
}

MonomialOrder toric_order(const ExponentMatrix& m) {
  MonomialOrder o = MonomialOrder::degrevlex(m.cols);
  o.weights = m.column_weights();
  for (std::uint64_t w : o.weights)
    if (w == 0) throw std::invalid_argument("exponent matrix has a zero column; no positive grading");
  return o;
}

GroebnerBasis toric_ideal(const ExponentMatrix& m, const Budget& budget, const ToricOptions& options,
                          const Deadline& deadline) {
  const MonomialOrder order = toric_order(m);
  Deadline local(budget.max_seconds);
  const Deadline& dl = budget.max_seconds > 0 && local.remaining() < deadline.remaining() ? local : deadline;
  Budget step = budget;
  step.max_seconds = 0;

  std::vector<Binomial> gens;
  for (const Binomial& f : lattice_basis_ideal(integer_kernel(m))) gens.push_back(remove_common_factor(f));
  if (options.seed_quadrics)
    for (Binomial& f : quadratic_kernel_binomials(m)) gens.push_back(std::move(f));

  for (std::size_t var = 0; var < m.cols && !gens.empty(); ++var) {
    std::vector<Binomial> next;
    for (const Binomial& f : saturate(gens, var, order, step, dl)) next.push_back(remove_common_factor(f));
    gens = std::move(next);
  }
  GroebnerBasis g = buchberger(gens, order, step, dl);

  for (const Binomial& f : g.generators)
    if (!in_kernel(m, f)) throw KernelSoundnessError("toric basis element outside the kernel");
  if (options.check_saturation)
    for (std::size_t var = 0; var < m.cols; ++var)
      if (!is_saturated(g.generators, var, order, step, dl))
        throw KernelSoundnessError("toric ideal is not saturated by variable " + std::to_string(var));
  return g;
}

GroebnerBasis toric_ideal(const ToricMap& phi, const Budget& budget, const ToricOptions& options,
                          const Deadline& deadline) {
  return toric_ideal(ExponentMatrix::of(phi), budget, options, deadline);
}

bool ideal_equal(const std::vector<Binomial>& a, const std::vector<Binomial>& b, const MonomialOrder& order,
                 const Budget& budget, const Deadline& deadline) {
  return buchberger(a, order, budget, deadline).generators == buchberger(b, order, budget, deadline).generators;
}

const char* to_string(PrimalityVerdict::Kind k) {
  switch (k) {
    case PrimalityVerdict::Kind::Prime:
      return "Prime";
    case PrimalityVerdict::Kind::NonPrime:
      return "NonPrime";
    case PrimalityVerdict::Kind::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

const char* to_string(PrimalityVerdict::Proof p) {
  switch (p) {
    case PrimalityVerdict::Proof::None:
      return "None";
    case PrimalityVerdict::Proof::LConfigToric:
      return "LConfigToric";
    case PrimalityVerdict::Proof::LadderToric:
      return "LadderToric";
    case PrimalityVerdict::Proof::SimpleToric:
      return "SimpleToric";
    case PrimalityVerdict::Proof::MarkedToric:
      return "MarkedToric";
  }
  return "?";
}

const char* to_string(PrimalityVerdict::Certificate c) {
  switch (c) {
    case PrimalityVerdict::Certificate::None:
      return "None";
    case PrimalityVerdict::Certificate::FullEquality:
      return "FullEquality";
    case PrimalityVerdict::Certificate::ContainmentOnly:
      return "ContainmentOnly";
    case PrimalityVerdict::Certificate::ZigZagWitness:
      return "ZigZagWitness";
  }
  return "?";
}

std::string PrimalityVerdict::summary() const {
  std::string feature;
  switch (proof) {
    case Proof::LConfigToric:
      feature = "L-configuration";
      break;
    case Proof::LadderToric:
      feature = "ladder";
      break;
    case Proof::SimpleToric:
      feature = "simple";
      break;
    case Proof::MarkedToric:
      feature = "marked vertices";
      break;
    case Proof::None:
      break;
  }
  switch (kind) {
    case Kind::Prime:
      if (certificate == Certificate::FullEquality) return "Prime (" + feature + "; I_P = J_P verified)";
      return "Prime (" + feature + "; I_P in J_P verified, equality not checked: " + reason + ")";
    case Kind::NonPrime:
      return "NonPrime (zig-zag walk of length " + std::to_string(witness ? witness->length() : 0) + ")";
    case Kind::Inconclusive:
      return "Inconclusive (" + reason + ")";
  }
  return "?";
}

void certify_with_map(const Polyomino& p, const ToricMap& phi, const CertifyOptions& options,
                      PrimalityVerdict& verdict) {
  verdict.marked = phi.marked;
  verdict.source_variables = phi.source.size();
  verdict.target_variables = phi.target.size();
  auto minors = inner_minors(p, phi.source);
  verdict.generators = minors.size();
  verdict.containment = check_containment(p, phi);
  if (!verdict.containment) {
    verdict.kind = PrimalityVerdict::Kind::Inconclusive;
    verdict.reason = "containment failed";
    return;
  }
  verdict.kind = PrimalityVerdict::Kind::Prime;
  verdict.certificate = PrimalityVerdict::Certificate::ContainmentOnly;
  if (!options.attempt_equality) {
    verdict.reason = "equality not attempted";
    return;
  }
  Deadline deadline(options.budget.max_seconds);
  Budget step = options.budget;
  step.max_seconds = 0;
  try {
    ExponentMatrix m = ExponentMatrix::of(phi);
    GroebnerBasis j = toric_ideal(m, step, options.toric, deadline);
    verdict.toric_basis = j.generators.size();
    GroebnerBasis i = buchberger(minors, j.order, step, deadline);
    if (i.generators == j.generators) {
      verdict.certificate = PrimalityVerdict::Certificate::FullEquality;
    } else {
      verdict.kind = PrimalityVerdict::Kind::Inconclusive;
      verdict.certificate = PrimalityVerdict::Certificate::None;
      verdict.reason = "I_P differs from J_P";
    }
  } catch (const BudgetExhausted& e) {
    verdict.reason = "budget exhausted (" + e.limit() + ")";
  }
}

PrimalityVerdict certify_primality(const Polyomino& p, const CertifyOptions& options) {
  PrimalityVerdict v;
  if (is_simple(p)) {
    v.proof = PrimalityVerdict::Proof::SimpleToric;
    certify_with_map(p, toric_map_marked(p, {}), options, v);
    return v;
  }
  if (!closed_path_certificate(p)) throw NotInSupportedClass("polyomino is neither simple nor a closed path");
  if (auto w = find_zigzag_walk(p)) {
    v.kind = PrimalityVerdict::Kind::NonPrime;
    v.certificate = PrimalityVerdict::Certificate::ZigZagWitness;
    v.witness = std::move(w);
    return v;
  }
  auto ls = find_l_configurations(p);
  if (!ls.empty()) {
    v.proof = PrimalityVerdict::Proof::LConfigToric;
    certify_with_map(p, toric_map_lconfig(p, ls[options.feature_choice % ls.size()]), options, v);
    return v;
  }
  auto ladders = find_ladders(p, 3);
  if (!ladders.empty()) {
    v.proof = PrimalityVerdict::Proof::LadderToric;
    certify_with_map(p, toric_map_ladder(p, ladders[options.feature_choice % ladders.size()]), options, v);
    return v;
  }
  v.reason = "closed path without zig-zag walk, L-configuration or ladder";
  return v;
}

nlohmann::json to_json(const Ring& ring, const GroebnerBasis& g) {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t i = 0; i < ring.size(); ++i) vars.push_back(ring.name(i));
  nlohmann::json gens = nlohmann::json::array();
  for (const Binomial& f : g.generators) gens.push_back(format(ring, f));
  return {{"ring", vars}, {"order", g.order.describe()}, {"reduced", g.reduced}, {"generators", gens}};
}

nlohmann::json to_json(const ZigZagWalk& w) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const LatticeInterval& i : w.intervals)
    intervals.push_back({{"a", {i.a.x, i.a.y}}, {"b", {i.b.x, i.b.y}}});
  return {{"length", w.length()}, {"intervals", intervals}, {"v", points_json(w.v)}, {"z", points_json(w.z)},
          {"u", points_json(w.u)}};
}

nlohmann::json to_json(const PrimalityVerdict& v) {
  nlohmann::json j = {{"kind", to_string(v.kind)},
                      {"proof", to_string(v.proof)},
                      {"certificate", to_string(v.certificate)},
                      {"containment", v.containment},
                      {"marked", points_json(v.marked)},
                      {"source_variables", v.source_variables},
                      {"target_variables", v.target_variables},
                      {"generators", v.generators},
                      {"toric_basis", v.toric_basis},
                      {"summary", v.summary()}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

}  // namespace polyprime
