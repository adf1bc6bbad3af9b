#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "polyprime/groebner.hpp"
#include "polyprime/ideals.hpp"
#include "polyprime/zigzag.hpp"

namespace polyprime {

/// Column r is the exponent vector of the image of the r-th source variable.
struct ExponentMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<long>> entries;  // rows x cols

  static ExponentMatrix from_rows(std::vector<std::vector<long>> rows);
  static ExponentMatrix of(const ToricMap& phi);
  long at(std::size_t r, std::size_t c) const { return entries[r][c]; }
  /// Column sums; a positive grading whenever every column is nonzero.
  std::vector<std::uint64_t> column_weights() const;
};

using IntVector = std::vector<mpz_class>;

/// Lattice basis of {u : M u = 0}, by unimodular column operations on [M; I].
/// The basis is returned in Hermite normal form (rows).
std::vector<IntVector> integer_kernel(const ExponentMatrix& m);

/// x^{u+} - x^{u-} per vector. Throws std::invalid_argument on a zero vector.
std::vector<Binomial> lattice_basis_ideal(const std::vector<IntVector>& basis);

/// All x_i x_j - x_k x_l with equal images (degree-two kernel elements).
std::vector<Binomial> quadratic_kernel_binomials(const ExponentMatrix& m);

bool in_kernel(const ExponentMatrix& m, const Binomial& f);

/// Default order for an exponent matrix: degrevlex graded by column sums.
MonomialOrder toric_order(const ExponentMatrix& m);

class KernelSoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ToricOptions {
  /// Also add the degree-two kernel binomials to the starting ideal (they lie
  /// in the kernel, so the saturation is unchanged; it only gets cheaper).
  bool seed_quadrics = true;
  /// After computing the basis, confirm I : x_i = I for every variable.
  bool check_saturation = true;
};

/// Reduced Groebner basis of ker(M) under toric_order(M): kernel lattice ->
/// lattice-basis ideal -> saturation by every variable -> reduced basis.
/// Every generator is checked against M (KernelSoundnessError otherwise).
GroebnerBasis toric_ideal(const ExponentMatrix& m, const Budget& budget = {}, const ToricOptions& options = {},
                          const Deadline& deadline = Deadline());
GroebnerBasis toric_ideal(const ToricMap& phi, const Budget& budget = {}, const ToricOptions& options = {},
                          const Deadline& deadline = Deadline());

/// Compares reduced Groebner bases under one order.
bool ideal_equal(const std::vector<Binomial>& a, const std::vector<Binomial>& b, const MonomialOrder& order,
                 const Budget& budget = {}, const Deadline& deadline = Deadline());

struct PrimalityVerdict {
  enum class Kind { Prime, NonPrime, Inconclusive };
  enum class Proof { None, LConfigToric, LadderToric, SimpleToric, MarkedToric };
  enum class Certificate { None, FullEquality, ContainmentOnly, ZigZagWitness };

  Kind kind = Kind::Inconclusive;
  Proof proof = Proof::None;
  Certificate certificate = Certificate::None;
  std::string reason;  // Inconclusive / downgrade explanation
  std::optional<ZigZagWalk> witness;
  std::vector<Point> marked;
  std::size_t source_variables = 0;
  std::size_t target_variables = 0;
  std::size_t generators = 0;     // |inner minors|
  std::size_t toric_basis = 0;    // size of the reduced basis of J_P, when computed
  bool containment = false;

  std::string summary() const;
};

const char* to_string(PrimalityVerdict::Kind k);
const char* to_string(PrimalityVerdict::Proof p);
const char* to_string(PrimalityVerdict::Certificate c);

class NotInSupportedClass : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CertifyOptions {
  Budget budget;
  bool attempt_equality = true;
  ToricOptions toric;
  /// Index into the detected L-configurations / ladders to use.
  std::size_t feature_choice = 0;
};

/// Certifies I_P = J_P for a marked toric map: containment, then (within
/// budget) equality of reduced bases. Fills the certificate fields.
void certify_with_map(const Polyomino& p, const ToricMap& phi, const CertifyOptions& options,
                      PrimalityVerdict& verdict);

/// Simple polyominoes and closed paths; throws NotInSupportedClass otherwise.
PrimalityVerdict certify_primality(const Polyomino& p, const CertifyOptions& options = {});

nlohmann::json to_json(const Ring& ring, const GroebnerBasis& g);
nlohmann::json to_json(const ZigZagWalk& w);
nlohmann::json to_json(const PrimalityVerdict& v);

}  // namespace polyprime
