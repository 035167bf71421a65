// Minimal semifree resolutions with filtration tracking, sppj resolutions,
// windowed Ext/Tor with sound exactness marks, Bass tables, depth, and
// projective/injective dimension verdicts.
//
// Resolutions are built stage by stage: each stage adjoins free generators in
// the top cohomological degree of the cone of the augmentation, killing a
// minimal H^0(A)-generating set of that cohomology. Window soundness: a
// generator of degree t only contributes to Hom-degree i when t + i meets the
// target's support, so building generators down to g_min = n_min - hi - 1
// makes every H^i with i <= hi exact.
//
// Resource policy: stage construction stops when the cumulative generator
// count exceeds a deterministic window-scaled budget; entries that would need
// missing generators (or matrices above the dimension budget) are reported
// but marked non-exact. Budgets are part of the configuration and recorded in
// reports, never silently changed.
#pragma once

#include <optional>

#include "dgaudit/dg.hpp"

namespace dgaudit {

struct ResourcePolicy {
  long gen_budget_override = 0;  // 0 = derive from window
  long dim_budget = 3000;        // max matrix dimension per cohomology computation

  long generators(int window) const {
    if (gen_budget_override > 0) return gen_budget_override;
    long w = window < 0 ? 0 : window;
    return 3 * (w + 1) * (w + 1) * (w + 1);
  }
};

enum class Truth { True, False, Unknown };
inline const char* truth_name(Truth t) {
  switch (t) {
    case Truth::True: return "True";
    case Truth::False: return "False";
    case Truth::Unknown: return "Unknown";
  }
  return "?";
}

struct Verdict {
  Truth value = Truth::Unknown;
  int at_window = 0;
  std::string witness;
  std::optional<long long> number;  // numeric payload (dimension value, shift, ...)
  std::vector<std::string> caveats;

  static Verdict yes(std::string w, std::optional<long long> n = std::nullopt) {
    Verdict v;
    v.value = Truth::True;
    v.witness = std::move(w);
    v.number = n;
    return v;
  }
  static Verdict no(std::string w) {
    Verdict v;
    v.value = Truth::False;
    v.witness = std::move(w);
    return v;
  }
  static Verdict unknown(int at, std::string w) {
    Verdict v;
    v.value = Truth::Unknown;
    v.at_window = at;
    v.witness = std::move(w);
    return v;
  }
};

struct SemifreeGen {
  int degree;
  int stage;
  // d(g) = sum coeff_i * g_i over earlier generators; coeff in A^{degree+1-t_i}
  std::vector<std::pair<std::size_t, Vec>> d_expansion;
  Vec aug_image;  // in target^{degree}
};

class SemifreeResolution {
 public:
  DgModule target;
  std::vector<SemifreeGen> gens;
  int stages = 0;
  int complete_below = 0;  // all generators of degree >= complete_below are present
  bool finite = false;     // augmentation cone is acyclic: the resolution is complete
  bool minimal = true;
  bool budget_truncated = false;
  long budget_used = 0;

  explicit SemifreeResolution(DgModule m) : target(std::move(m)) {}

  const DgAlgebra& algebra() const { return *target.alg; }
  std::map<int, int> generator_counts() const;
  int min_gen_degree() const;  // requires at least one generator
  // Materializes G as a validated DgModule (use only at small sizes).
  DgModule as_module() const;
  // The augmentation G -> target as components per degree.
  std::map<int, Matrix> augmentation() const;
  // Per-degree basis: (generator, algebra-basis index in A^{deg - t_gen}).
  std::vector<std::pair<std::size_t, int>> basis_at(int deg) const;
  Matrix differential_at(int deg) const;  // G^deg -> G^{deg+1}
};

SemifreeResolution minimal_semifree(const DgModule& m, int g_min,
                                    const ResourcePolicy& policy = {});

// Generator counts per degree; requires a minimal resolution.
std::map<int, int> betti(const SemifreeResolution& res);

struct ExtTable {
  int lo = 0, hi = 0;
  std::map<int, int> dims;         // computed entries (may extend beyond [lo,hi] when complete)
  std::map<int, bool> exact;       // soundness mark per entry
  bool complete = false;           // all unlisted entries are exactly zero
  std::string route;               // "hom" | "dual-betti" | "tensor-dual"
  std::vector<std::string> caveats;

  int dim(int i) const {
    auto it = dims.find(i);
    return it == dims.end() ? 0 : it->second;
  }
  bool is_exact(int i) const {
    if (complete) return true;
    auto it = exact.find(i);
    return it != exact.end() && it->second;
  }
  std::optional<int> sup_nonzero() const;
  long long total_listed() const;
};

enum class ExtRoute { Auto, Direct, DualBetti };

ExtTable ext(const DgModule& m, const DgModule& n, int lo, int hi,
             const ResourcePolicy& policy = {}, ExtRoute route = ExtRoute::Auto);
ExtTable tor_table(const DgModule& m, const DgModule& n, int lo, int hi,
                   const ResourcePolicy& policy = {});
ExtTable bass_table(const DgModule& m, int window, const ResourcePolicy& policy = {});

int depth(const DgModule& m, const ResourcePolicy& policy = {});

Verdict projdim_verdict(const DgModule& m, int window, const ResourcePolicy& policy = {});

struct InjdimResult {
  std::optional<int> sup;  // within-window value, exact when certified
  bool certified = false;
  ExtTable table;
};
InjdimResult injdim_sup(const DgModule& m, int window, const ResourcePolicy& policy = {});

struct RhomResult {
  ExtTable table;
  Verdict bounded;
  std::optional<DgModule> dual_module;  // honest RHom(m, A) when bounded is True
  std::string route;
};
RhomResult rhom_into_A(const DgModule& m, int window, const ResourcePolicy& policy = {});

struct SppjStep {
  DgModule p;  // free
  DgModule m;  // M_{i+1} = cone(f_i)[-1]
  int sup_m;   // sup H(M_i) at this step
};
std::vector<SppjStep> sppj_resolution(const DgModule& m, int steps, bool sup_preserving_nonminimal,
                                      const ResourcePolicy& policy = {});

// --- building blocks shared with the audit layer ---

// Hom_A(G, n) and G tensor_A n as plain complexes (lean; table computations).
Cochain hom_complex_from_semifree(const SemifreeResolution& g, const DgModule& n);
Cochain tensor_complex_from_semifree(const SemifreeResolution& g, const DgModule& n);
// The same Hom/tensor objects as validated DgModules (materialize only small).
DgModule hom_module_from_semifree(const SemifreeResolution& g, const DgModule& n);
DgModule tensor_module_from_semifree(const SemifreeResolution& g, const DgModule& n);

// Extract stage data from a module that is free on the given generators
// (positions/degrees supplied); used to present Hom(G, A) as semifree again.
std::vector<SemifreeGen> semifree_from_free_module(const DgModule& mod,
                                                   const std::vector<std::pair<int, Vec>>& gens);

// G/F^n G as a complex, exact in degrees > exact_above (reported back).
struct FiltrationQuotient {
  Cochain complex;
  int exact_above;  // cohomology trustworthy strictly above this degree
};
FiltrationQuotient quotient_mod_filtration(const SemifreeResolution& g, int n);

// Reflexivity: the natural map m -> RHom(RHom(m,A),A), checked exactly when a
// finite resolution of m exists; dimension-table evidence otherwise.
struct ReflexiveResult {
  Verdict verdict;
  std::optional<int> gdim_value;  // sup RHom(m, A) when bounded
};
ReflexiveResult biduality(const DgModule& m, int window, const ResourcePolicy& policy = {});

}  // namespace dgaudit
