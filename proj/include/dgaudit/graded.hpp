// Graded vector spaces and cochain complexes over a field: cohomology with
// chosen representative cocycles, shifts, cones, smart truncations, and the
// numerical invariants sup/inf/amp.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgaudit/matrix.hpp"

namespace dgaudit {

struct GradedSpace {
  std::map<int, int> dims;                            // degree -> dimension (> 0 only)
  std::map<int, std::vector<std::string>> labels;     // optional basis labels

  int dim(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  void set_dim(int d, int n);
  bool empty() const { return dims.empty(); }
  int total_dim() const;
  int min_deg() const;  // requires nonempty
  int max_deg() const;
  std::string label(int d, std::size_t i) const;
  void set_labels(int d, std::vector<std::string> names) { labels[d] = std::move(names); }
};

// A cochain complex: d^i : C^i -> C^{i+1}, d o d = 0 (checked at construction).
class Cochain {
 public:
  Cochain(Field f, GradedSpace sp, std::map<int, Matrix> d);
  static Cochain zero(Field f) { return Cochain(f, GradedSpace{}, {}); }

  const Field& field() const { return fld_; }
  const GradedSpace& space() const { return sp_; }
  int dim(int d) const { return sp_.dim(d); }
  Matrix d(int i) const;  // materializes a zero matrix when absent

 private:
  Field fld_;
  GradedSpace sp_;
  std::map<int, Matrix> d_;
};

// A degree-`shift` map of complexes; commutes with differentials up to the
// sign convention of its shift: d_T comp = (-1)^shift comp d_S.
class CochainMap {
 public:
  CochainMap(Cochain src, Cochain tgt, std::map<int, Matrix> comps, int shift = 0);

  const Cochain& source() const { return src_; }
  const Cochain& target() const { return tgt_; }
  int shift() const { return shift_; }
  Matrix component(int i) const;  // C_src^i -> C_tgt^{i+shift}

 private:
  Cochain src_, tgt_;
  std::map<int, Matrix> comps_;
  int shift_;
};

// Cohomology together with representative cocycles and a projection recipe:
// reps[i] columns are cocycles whose classes form a basis of H^i.
struct Cohomology {
  GradedSpace h;
  std::map<int, Matrix> reps;

  int dim(int d) const { return h.dim(d); }
};

Cohomology cohomology(const Cochain& c);

// Coordinates of a cocycle's class in the chosen basis of H^deg.
// `boundary_src` is d^{deg-1}; pass the complex so the routine can see it.
Vec class_coordinates(const Cochain& c, const Cohomology& coh, int deg, const Vec& cocycle);

Cochain shift(const Cochain& c, int i);
Cochain cone(const CochainMap& f);
Cochain trunc_ge(const Cochain& c, int i);
Cochain trunc_le(const Cochain& c, int i);
Cochain direct_sum(const Cochain& a, const Cochain& b);

struct SupInfAmp {
  std::optional<int> sup;  // nullopt encodes -infinity (zero object)
  std::optional<int> inf;  // nullopt encodes +infinity
  std::optional<int> amp;  // nullopt encodes undefined
};

SupInfAmp sup_inf_amp(const Cochain& c);
bool is_acyclic(const Cochain& c);

}  // namespace dgaudit
