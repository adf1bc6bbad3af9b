#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "polyprime/toric.hpp"

namespace polyprime {

/// Lexicographically least cell list over the eight lattice symmetries,
/// translated so the bounding box starts at (0,0).
std::vector<Cell> canonical_form(const Polyomino& p);
Polyomino canonical_polyomino(const Polyomino& p);

/// Every closed path with at most max_rank cells, one per symmetry class,
/// as canonical polyominoes ordered by (rank, cells). Work is split over
/// `jobs` threads by path prefix.
std::vector<Polyomino> enumerate_closed_paths(std::size_t max_rank, unsigned jobs = 1);

// ---- Families built from paths -------------------------------------------

class ConditionViolated : public std::invalid_argument {
 public:
  ConditionViolated(std::string family, int clause, const std::string& detail);
  const std::string& family() const { return family_; }
  int clause() const { return clause_; }

 private:
  std::string family_;
  int clause_;
};

struct FamilySpec {
  enum class Kind { PSC, RectangleLinked, GoodLRectangle, LadderRectangle };
  Kind kind = Kind::PSC;
  /// Named parts: "S", "C", "T1", "T2" for P(S,C); "R", "P1", "S", "P2" for
  /// rectangle-linked shapes. Paths are stored in sequence order.
  std::map<std::string, std::vector<Cell>> parts;
  /// R = [(1,1),(m,n)] for the rectangle-linked kinds.
  Coord m = 0;
  Coord n = 0;
};

const char* to_string(FamilySpec::Kind k);

struct FamilyInstance {
  Polyomino polyomino;
  FamilySpec spec;
};

/// P(S,C) = S ∪ C ∪ T1 ∪ T2 from positioned parts; C is oriented so that
/// its first cell meets T1. Clause 0 covers the part types (S simple, C an
/// open path, T1/T2 triminoes), clauses 1-5 the definition.
FamilyInstance build_psc(const std::vector<Cell>& s, const std::vector<Cell>& c, const std::vector<Cell>& t1,
                         const std::vector<Cell>& t2);

/// Rectangle R = [(1,1),(m,n)] linked to S by the open paths P1 = C_1..C_t
/// and P2 = F_1..F_p; coordinates are already in the normalized frame.
/// Clause 0 covers part types and m >= 4, n >= 2; clauses 1-6 the definition.
FamilyInstance build_rectangle_linked(Coord m, Coord n, const std::vector<Cell>& p1, const std::vector<Cell>& s,
                                      const std::vector<Cell>& p2);

/// Additionally checks the L-rectangle clauses (C_2 at (1,n+1), allowed V);
/// throws ConditionViolated with clauses 7 and 8.
FamilyInstance build_l_rectangle(Coord m, Coord n, const std::vector<Cell>& p1, const std::vector<Cell>& s,
                                 const std::vector<Cell>& p2);
/// Additionally checks the ladder-rectangle clauses (two maximal horizontal
/// blocks at the start of P1, V on the top side); clauses 7 and 8.
FamilyInstance build_ladder_rectangle(Coord m, Coord n, const std::vector<Cell>& p1, const std::vector<Cell>& s,
                                      const std::vector<Cell>& p2);

/// The two cell-membership conditions of a good L-rectangle.
bool check_good_l_rectangle(const Polyomino& p, const FamilySpec& spec);

/// Number s of cells in the first horizontal block of P1 (ladder-rectangles).
std::size_t first_block_length(const FamilySpec& spec);

/// Marked vertex set used for the family's toric map (empty when the
/// family has no covered feature).
std::vector<Point> family_marked_set(const Polyomino& p, const FamilySpec& spec,
                                     PrimalityVerdict::Proof* proof = nullptr);

PrimalityVerdict certify_family(const Polyomino& p, const FamilySpec& spec, const CertifyOptions& options = {});

nlohmann::json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const nlohmann::json& j);
/// Dispatches to the builder for spec.kind.
FamilyInstance build_family(const FamilySpec& spec);

// ---- Verification harness ---------------------------------------------------

struct HarnessOptions {
  std::size_t max_rank = 12;
  unsigned jobs = 1;
  CertifyOptions certify;
  bool certify_shapes = true;
  bool timings = false;  // timings make the report non-reproducible
  std::string cache_dir;  // empty: no cache
};

struct HarnessReport {
  std::vector<nlohmann::json> records;  // one per shape, enumeration order
  nlohmann::json summary;
  std::size_t counterexamples = 0;
  std::size_t budget_exhausted = 0;
  std::size_t cache_hits = 0;
};

/// Checks one closed path: the feature equivalence, the block / hole /
/// simplicity facts, open-run deletions and (optionally) certification.
/// Failures are listed in the record's "violations" array.
nlohmann::json examine_closed_path(const Polyomino& p, const HarnessOptions& options);

HarnessReport verify_main_theorem(const HarnessOptions& options,
                                  const std::function<void(const nlohmann::json&)>& on_record = {});

/// Content address of a shape under given harness settings.
std::string cache_key(const Polyomino& canonical, const HarnessOptions& options);

}  // namespace polyprime
