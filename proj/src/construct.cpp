#include "dgaudit/construct.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dgaudit {

namespace {

int pow_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

// Incremental row basis of a subspace, used for span-membership queries.
struct SpanChecker {
  Field f;
  std::vector<Vec> rows;               // reduced, each with leading 1
  std::vector<std::size_t> pivots;     // leading coordinate per row

  explicit SpanChecker(Field fld) : f(fld) {}

  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Scalar& c = v[pivots[r]];
      if (f.is_zero(c)) continue;
      Scalar cc = c;
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = f.sub(v[j], f.mul(cc, rows[r][j]));
    }
    return v;
  }

  bool add(Vec v) {  // returns true if the row basis grew
    v = reduce(std::move(v));
    std::size_t lead = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!f.is_zero(v[j])) {
        lead = j;
        break;
      }
    if (lead == v.size()) return false;
    Scalar inv = f.inv(v[lead]);
    for (auto& x : v) x = f.mul(inv, x);
    rows.push_back(std::move(v));
    pivots.push_back(lead);
    return true;
  }

  bool contains(const Vec& v) const { return is_zero_vec(f, reduce(v)); }
};

void enumerate_monomials(int nvars, int max_total, std::vector<MultiPoly::Exp>& out) {
  MultiPoly::Exp cur(static_cast<std::size_t>(nvars), 0);
  // graded-lex order: by total degree, then lexicographic
  std::vector<MultiPoly::Exp> all;
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == nvars) {
      all.push_back(cur);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      cur[static_cast<std::size_t>(var)] = static_cast<std::uint32_t>(e);
      rec(var + 1, remaining - e);
    }
    cur[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, max_total);
  std::sort(all.begin(), all.end(), [](const MultiPoly::Exp& a, const MultiPoly::Exp& b) {
    std::uint32_t ta = std::accumulate(a.begin(), a.end(), 0u);
    std::uint32_t tb = std::accumulate(b.begin(), b.end(), 0u);
    if (ta != tb) return ta < tb;
    return a < b;
  });
  out = std::move(all);
}

std::uint64_t count_monomials(int nvars, int max_total) {
  // C(max_total + nvars, nvars)
  std::uint64_t num = 1;
  for (int i = 1; i <= nvars; ++i) num = num * static_cast<std::uint64_t>(max_total + i) / i;
  return num;
}

}  // namespace

std::string monomial_label(const std::vector<std::string>& vars, const MultiPoly::Exp& e) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

namespace {

// Full quotient data including the reducer; ArtinianRingData::reduce is a
// stub and the real reduction happens here.
struct QuotientKernel {
  Field f;
  std::vector<std::string> vars;
  int D = 0;                                   // truncation degree
  std::vector<MultiPoly::Exp> trunc_basis;     // monomials of degree <= D
  std::map<MultiPoly::Exp, std::size_t> index;
  SpanChecker ideal;
  std::vector<MultiPoly::Exp> std_basis;       // standard monomials
  std::vector<std::size_t> std_positions;      // positions in trunc_basis
  std::map<std::size_t, std::size_t> pos_to_std;

  QuotientKernel(Field fld) : f(fld), ideal(fld) {}

  Vec to_trunc(const MultiPoly& p) const {
    Vec v(trunc_basis.size(), f.zero());
    for (const auto& [e, c] : p.terms()) {
      std::uint32_t td = std::accumulate(e.begin(), e.end(), 0u);
      if (td > static_cast<std::uint32_t>(D)) continue;  // in the ideal
      v[index.at(e)] = f.add(v[index.at(e)], c);
    }
    return v;
  }

  Vec reduce_to_std(const MultiPoly& p) const {
    Vec r = ideal.reduce(to_trunc(p));
    Vec out(std_basis.size(), f.zero());
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (f.is_zero(r[j])) continue;
      auto it = pos_to_std.find(j);
      require(it != pos_to_std.end(), Errc::InternalInconsistency, "reduction left a pivot coord");
      out[it->second] = r[j];
    }
    return out;
  }
};

QuotientKernel build_quotient(Field f, const std::vector<std::string>& vars,
                              const std::vector<MultiPoly>& relations, int cap) {
  int n = static_cast<int>(vars.size());
  for (const auto& g : relations)
    require(g.vars() == vars, Errc::VariableMismatch, "relation over different variables");

  // Per-variable nilpotency witnesses x_i^{N_i} in I, certified by span
  // membership among degree-bounded multiples of the generators.
  std::vector<int> nilp(static_cast<std::size_t>(n), 0);
  if (n > 0) {
    require(!relations.empty(), Errc::InfiniteDimensional,
            "no relations: polynomial ring is infinite-dimensional");
    int base = 1;
    for (const auto& g : relations) base = std::max(base, static_cast<int>(g.total_degree()));
    bool all_found = false;
    for (int d = base; !all_found; d += 2) {
      require(d <= 64 && count_monomials(n, d) <= 8ull * static_cast<std::uint64_t>(cap),
              Errc::InfiniteDimensional,
              "no nilpotency witness for some variable within the dimension cap");
      std::vector<MultiPoly::Exp> mons;
      enumerate_monomials(n, d, mons);
      std::map<MultiPoly::Exp, std::size_t> idx;
      for (std::size_t i = 0; i < mons.size(); ++i) idx[mons[i]] = i;
      SpanChecker ideal_d(f);
      for (const auto& g : relations) {
        int gd = static_cast<int>(g.total_degree());
        for (const auto& m : mons) {
          int md = static_cast<int>(std::accumulate(m.begin(), m.end(), 0u));
          if (md + gd > d) continue;
          Vec v(mons.size(), f.zero());
          for (const auto& [e, c] : g.terms()) {
            MultiPoly::Exp s(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) s[i] = e[i] + m[i];
            if (static_cast<int>(std::accumulate(s.begin(), s.end(), 0u)) > d) continue;
            auto it = idx.find(s);
            v[it->second] = f.add(v[it->second], c);
          }
          ideal_d.add(std::move(v));
        }
      }
      all_found = true;
      for (int i = 0; i < n; ++i) {
        if (nilp[static_cast<std::size_t>(i)] > 0) continue;
        bool found = false;
        for (int N = 1; N <= d && !found; ++N) {
          MultiPoly::Exp e(static_cast<std::size_t>(n), 0);
          e[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(N);
          Vec v(mons.size(), f.zero());
          v[idx.at(e)] = f.one();
          if (ideal_d.contains(v)) {
            nilp[static_cast<std::size_t>(i)] = N;
            found = true;
          }
        }
        if (!found) all_found = false;
      }
    }
  }

  QuotientKernel q(f);
  q.vars = vars;
  q.D = 0;
  for (int i = 0; i < n; ++i) q.D += nilp[static_cast<std::size_t>(i)] - 1;
  require(count_monomials(n, q.D) <= 8ull * static_cast<std::uint64_t>(cap), Errc::CapExceeded,
          "truncation basis exceeds the dimension cap");
  enumerate_monomials(n, q.D, q.trunc_basis);
  for (std::size_t i = 0; i < q.trunc_basis.size(); ++i) q.index[q.trunc_basis[i]] = i;

  // Ideal span inside the truncation: all monomial multiples of the
  // generators (products truncate to zero above degree D, which is sound
  // because every monomial of degree > D already lies in the ideal).
  for (const auto& g : relations) {
    for (const auto& m : q.trunc_basis) {
      MultiPoly mono(f, vars);
      mono.add_term(m, f.one());
      q.ideal.add(q.to_trunc(mono.mul(g)));
    }
  }
  std::vector<bool> is_piv(q.trunc_basis.size(), false);
  for (auto p : q.ideal.pivots) is_piv[p] = true;
  for (std::size_t i = 0; i < q.trunc_basis.size(); ++i)
    if (!is_piv[i]) {
      q.pos_to_std[i] = q.std_basis.size();
      q.std_positions.push_back(i);
      q.std_basis.push_back(q.trunc_basis[i]);
    }
  require(q.std_basis.size() <= static_cast<std::size_t>(cap), Errc::CapExceeded,
          "quotient dimension exceeds the cap");
  require(!q.std_basis.empty(), Errc::InfiniteDimensional, "quotient collapsed to zero");
  // sanity: relations reduce to zero
  for (const auto& g : relations)
    require(is_zero_vec(f, q.reduce_to_std(g)), Errc::InternalInconsistency,
            "relation does not vanish in its own quotient");
  return q;
}

}  // namespace

ArtinianRingData artinian_quotient(Field f, const std::vector<std::string>& vars,
                                   const std::vector<MultiPoly>& relations, int cap) {
  QuotientKernel q = build_quotient(f, vars, relations, cap);
  ArtinianRingData out(f);
  out.vars = vars;
  out.basis = q.std_basis;
  std::size_t dim = out.basis.size();
  out.table = Matrix(f, dim, dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      MultiPoly pi(f, vars), pj(f, vars);
      pi.add_term(out.basis[i], f.one());
      pj.add_term(out.basis[j], f.one());
      Vec prod = q.reduce_to_std(pi.mul(pj));
      for (std::size_t r = 0; r < dim; ++r) out.table.at(r, i * dim + j) = prod[r];
    }
  return out;
}

namespace {

// Word in the odd exterior generators: strictly increasing index list.
using Word = std::vector<int>;

// Merge two words; returns false when they share a generator (odd square).
bool merge_words(const Word& a, const Word& b, Word& out, int& sign) {
  out.clear();
  sign = 1;
  std::size_t i = 0, j = 0;
  // Count transpositions of odd generators: each element of b passing over a
  // remaining element of a flips the sign.
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      if ((a.size() - i) % 2 != 0) sign = -sign;
      out.push_back(b[j++]);
    } else {
      return false;  // equal generators
    }
  }
  return true;
}

}  // namespace

AlgebraPtr expand_presentation(const Presentation& p) {
  const Field& f = p.field;
  for (const auto& g : p.gens) {
    require(g.degree <= -1, Errc::AxiomFailure, "generator " + g.name + " has degree > -1");
    require(g.degree % 2 != 0, Errc::CapExceeded,
            "even-degree generator " + g.name +
                " generates an infinite-dimensional algebra under the cap");
  }
  QuotientKernel ring = build_quotient(f, p.ring_vars, p.relations, p.cap);
  std::size_t rdim = ring.std_basis.size();
  int ng = static_cast<int>(p.gens.size());
  require(ng <= 24, Errc::CapExceeded, "too many exterior generators");
  std::size_t nwords = std::size_t{1} << ng;
  require(rdim * nwords <= static_cast<std::size_t>(p.cap), Errc::CapExceeded,
          "total dimension " + std::to_string(rdim * nwords) + " exceeds cap");

  // enumerate words (subsets), grouped later by degree
  std::vector<Word> words;
  for (std::size_t mask = 0; mask < nwords; ++mask) {
    Word w;
    for (int i = 0; i < ng; ++i)
      if (mask & (std::size_t{1} << i)) w.push_back(i);
    words.push_back(std::move(w));
  }
  auto word_degree = [&](const Word& w) {
    int d = 0;
    for (int gi : w) d += p.gens[static_cast<std::size_t>(gi)].degree;
    return d;
  };
  std::map<Word, std::size_t> word_index;
  for (std::size_t i = 0; i < words.size(); ++i) word_index[words[i]] = i;

  // basis layout per degree: (word, ring element), words in mask order
  struct Pos {
    std::size_t word, ring;
  };
  std::map<int, std::vector<Pos>> layout;
  for (std::size_t w = 0; w < words.size(); ++w) {
    int d = word_degree(words[w]);
    for (std::size_t r = 0; r < rdim; ++r) layout[d].push_back({w, r});
  }
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, std::size_t>> position;
  for (const auto& [d, list] : layout)
    for (std::size_t i = 0; i < list.size(); ++i)
      position[{list[i].word, list[i].ring}] = {d, i};

  auto algebra = std::make_shared<DgAlgebra>(f);
  algebra->name = "presented";
  for (const auto& [d, list] : layout) {
    algebra->comps.set_dim(d, static_cast<int>(list.size()));
    std::vector<std::string> labels;
    for (const auto& pos : list) {
      std::string rl = monomial_label(p.ring_vars, ring.std_basis[pos.ring]);
      std::string wl;
      for (int gi : words[pos.word]) {
        if (!wl.empty()) wl += "*";
        wl += p.gens[static_cast<std::size_t>(gi)].name;
      }
      labels.push_back(wl.empty() ? rl : (rl == "1" ? wl : rl + "*" + wl));
    }
    algebra->comps.set_labels(d, std::move(labels));
  }

  // ring multiplication table, computed once
  std::vector<std::vector<Vec>> ring_table(rdim, std::vector<Vec>(rdim));
  for (std::size_t i = 0; i < rdim; ++i)
    for (std::size_t j = 0; j < rdim; ++j) {
      MultiPoly pi(f, p.ring_vars), pj(f, p.ring_vars);
      pi.add_term(ring.std_basis[i], f.one());
      pj.add_term(ring.std_basis[j], f.one());
      ring_table[i][j] = ring.reduce_to_std(pi.mul(pj));
    }
  Vec ring_one = ring.reduce_to_std(MultiPoly::constant(f, p.ring_vars, f.one()));

  // element arithmetic: map word -> ring coordinate vector
  using Element = std::map<std::size_t, Vec>;
  auto ring_mul = [&](const Vec& a, const Vec& b) {
    Vec out(rdim, f.zero());
    for (std::size_t i = 0; i < rdim; ++i) {
      if (f.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < rdim; ++j) {
        if (f.is_zero(b[j])) continue;
        Scalar c = f.mul(a[i], b[j]);
        const Vec& prod = ring_table[i][j];
        for (std::size_t r = 0; r < rdim; ++r) out[r] = f.add(out[r], f.mul(c, prod[r]));
      }
    }
    return out;
  };
  auto elem_mul = [&](const Element& x, const Element& y) {
    Element out;
    for (const auto& [w1, r1] : x)
      for (const auto& [w2, r2] : y) {
        Word merged;
        int sign;
        if (!merge_words(words[w1], words[w2], merged, sign)) continue;
        Vec rv = ring_mul(r1, r2);
        if (sign < 0) rv = scale_vec(f, f.from_int(-1), rv);
        std::size_t wi = word_index.at(merged);
        auto it = out.find(wi);
        if (it == out.end())
          out[wi] = rv;
        else
          it->second = add_vec(f, it->second, rv);
      }
    for (auto it = out.begin(); it != out.end();)
      it = is_zero_vec(f, it->second) ? out.erase(it) : std::next(it);
    return out;
  };

  // differentials of single generators as elements
  std::vector<Element> gen_diff(static_cast<std::size_t>(ng));
  for (int gi = 0; gi < ng; ++gi) {
    const auto& g = p.gens[static_cast<std::size_t>(gi)];
    auto it = p.differentials.find(g.name);
    if (it == p.differentials.end()) continue;
    Element e;
    for (const auto& term : it->second) {
      int tdeg = term.gen
                     ? [&] {
                         for (const auto& gg : p.gens)
                           if (gg.name == *term.gen) return gg.degree;
                         fail(Errc::NameError, "unknown generator " + *term.gen);
                       }()
                     : 0;
      require(tdeg == g.degree + 1, Errc::AxiomFailure,
              "differential of " + g.name + " does not raise degree by exactly 1");
      std::size_t wi;
      if (term.gen) {
        int target = -1;
        for (int k = 0; k < ng; ++k)
          if (p.gens[static_cast<std::size_t>(k)].name == *term.gen) target = k;
        wi = word_index.at(Word{target});
      } else {
        wi = word_index.at(Word{});
      }
      Vec rv = ring.reduce_to_std(term.coeff);
      auto jt = e.find(wi);
      if (jt == e.end())
        e[wi] = rv;
      else
        jt->second = add_vec(f, jt->second, rv);
    }
    gen_diff[static_cast<std::size_t>(gi)] = std::move(e);
  }

  auto elem_d = [&](std::size_t w, std::size_t r) {
    Element out;
    const Word& word = words[w];
    int sign = 1;
    for (std::size_t t = 0; t < word.size(); ++t) {
      int gi = word[t];
      const Element& dg = gen_diff[static_cast<std::size_t>(gi)];
      if (!dg.empty()) {
        // prefix * d(g_t) * suffix, with the stage sign and the ring
        // coefficient carried on the prefix
        Element pre, suf;
        Word wpre(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(t));
        Word wsuf(word.begin() + static_cast<std::ptrdiff_t>(t) + 1, word.end());
        Vec rcoef(rdim, f.zero());
        rcoef[r] = sign < 0 ? f.from_int(-1) : f.one();
        pre[word_index.at(wpre)] = rcoef;
        suf[word_index.at(wsuf)] = ring_one;
        Element mid = elem_mul(elem_mul(pre, dg), suf);
        for (const auto& [wi, vv] : mid) {
          auto it = out.find(wi);
          if (it == out.end())
            out[wi] = vv;
          else
            it->second = add_vec(f, it->second, vv);
        }
      }
      sign = (p.gens[static_cast<std::size_t>(gi)].degree % 2 != 0) ? -sign : sign;
    }
    for (auto it = out.begin(); it != out.end();)
      it = is_zero_vec(f, it->second) ? out.erase(it) : std::next(it);
    return out;
  };

  auto to_coords = [&](const Element& e, int expected_deg) {
    Vec v(static_cast<std::size_t>(algebra->comps.dim(expected_deg)), f.zero());
    for (const auto& [wi, rv] : e)
      for (std::size_t r = 0; r < rdim; ++r) {
        if (f.is_zero(rv[r])) continue;
        auto [d, pos] = position.at({wi, r});
        require(d == expected_deg, Errc::InternalInconsistency, "degree bookkeeping failure");
        v[pos] = f.add(v[pos], rv[r]);
      }
    return v;
  };

  // multiplication structure constants
  for (const auto& [di, li] : layout)
    for (const auto& [dj, lj] : layout) {
      int dk = di + dj;
      if (!layout.count(dk)) continue;
      Matrix m(f, static_cast<std::size_t>(layout[dk].size()), li.size() * lj.size());
      for (std::size_t a = 0; a < li.size(); ++a)
        for (std::size_t b = 0; b < lj.size(); ++b) {
          Element ea, eb;
          ea[li[a].word] = unit_vec(f, rdim, li[a].ring);
          eb[lj[b].word] = unit_vec(f, rdim, lj[b].ring);
          Vec prod = to_coords(elem_mul(ea, eb), dk);
          for (std::size_t rr = 0; rr < prod.size(); ++rr)
            m.at(rr, a * lj.size() + b) = prod[rr];
        }
      algebra->mult.emplace(std::make_pair(di, dj), std::move(m));
    }

  // differential
  for (const auto& [d, list] : layout) {
    if (!layout.count(d + 1)) continue;
    Matrix dd(f, static_cast<std::size_t>(layout[d + 1].size()), list.size());
    for (std::size_t a = 0; a < list.size(); ++a) {
      Vec img = to_coords(elem_d(list[a].word, list[a].ring), d + 1);
      for (std::size_t rr = 0; rr < img.size(); ++rr) dd.at(rr, a) = img[rr];
    }
    if (!dd.is_zero()) algebra->diff.emplace(d, std::move(dd));
  }

  // unit and variable classes
  {
    Element e;
    e[word_index.at(Word{})] = ring_one;
    algebra->unit = to_coords(e, 0);
    for (const auto& v : p.ring_vars) {
      Element ev;
      ev[word_index.at(Word{})] = ring.reduce_to_std(MultiPoly::variable(f, p.ring_vars, v));
      algebra->var_classes[v] = to_coords(ev, 0);
    }
  }
  assert_valid(*algebra);
  return algebra;
}

AlgebraPtr artinian_ring(Field f, const std::vector<std::string>& vars,
                         const std::vector<MultiPoly>& relations, int cap) {
  Presentation p(f);
  p.ring_vars = vars;
  p.relations = relations;
  p.cap = cap;
  AlgebraPtr a = expand_presentation(p);
  const_cast<DgAlgebra&>(*a).name = "ring";
  return a;
}

AlgebraPtr koszul_quotient(const AlgebraPtr& a, const Vec& x0, bool lift_tweak) {
  const Field& f = a->field;
  require(x0.size() == static_cast<std::size_t>(a->dim(0)), Errc::ShapeError,
          "Koszul element must live in A^0");
  Vec lift = x0;
  if (lift_tweak && a->dim(-1) > 0) {
    Vec bdry = a->d(-1).apply(unit_vec(f, static_cast<std::size_t>(a->dim(-1)), 0));
    lift = add_vec(f, lift, bdry);
  }

  auto b = std::make_shared<DgAlgebra>(f);
  b->name = a->name + "//x";
  // degree d component: A^d (plain part) followed by A^{d+1} (e part)
  std::map<int, int> dims;
  for (const auto& [d, n] : a->comps.dims) dims[d] += n;
  for (const auto& [d, n] : a->comps.dims) dims[d - 1] += n;
  for (const auto& [d, n] : dims) b->comps.set_dim(d, n);
  auto adim = [&](int d) { return static_cast<std::size_t>(a->dim(d)); };
  for (const auto& [d, n] : dims) {
    (void)n;
    std::vector<std::string> ls;
    for (int i = 0; i < a->dim(d); ++i) ls.push_back(a->comps.label(d, i));
    for (int i = 0; i < a->dim(d + 1); ++i) ls.push_back(a->comps.label(d + 1, i) + "*e");
    b->comps.set_labels(d, std::move(ls));
  }

  // multiplication: (a1 + b1 e)(a2 + b2 e) = a1 a2 + (a1 b2 + (-1)^{d2} b1 a2) e
  for (const auto& [d1, n1] : dims)
    for (const auto& [d2, n2] : dims) {
      int dk = d1 + d2;
      if (!dims.count(dk)) continue;
      Matrix m(f, static_cast<std::size_t>(dims[dk]), static_cast<std::size_t>(n1) * n2);
      auto put = [&](std::size_t row, std::size_t c1, std::size_t c2, const Scalar& v) {
        std::size_t col = c1 * static_cast<std::size_t>(n2) + c2;
        m.at(row, col) = f.add(m.at(row, col), v);
      };
      Matrix m_pp = a->mult_matrix(d1, d2);          // plain*plain -> plain
      Matrix m_pe = a->mult_matrix(d1, d2 + 1);      // plain*(e part) -> e
      Matrix m_ep = a->mult_matrix(d1 + 1, d2);      // (e part)*plain -> e
      for (std::size_t al = 0; al < adim(d1); ++al)
        for (std::size_t be = 0; be < adim(d2); ++be)
          for (std::size_t r = 0; r < adim(dk); ++r)
            put(r, al, be, m_pp.at(r, al * adim(d2) + be));
      for (std::size_t al = 0; al < adim(d1); ++al)
        for (std::size_t be = 0; be < adim(d2 + 1); ++be)
          for (std::size_t r = 0; r < adim(dk + 1); ++r)
            put(adim(dk) + r, al, adim(d2) + be, m_pe.at(r, al * adim(d2 + 1) + be));
      int sign = pow_sign(d2);
      for (std::size_t al = 0; al < adim(d1 + 1); ++al)
        for (std::size_t be = 0; be < adim(d2); ++be)
          for (std::size_t r = 0; r < adim(dk + 1); ++r) {
            Scalar v = m_ep.at(r, al * adim(d2) + be);
            if (sign < 0) v = f.neg(v);
            put(adim(dk) + r, adim(d1) + al, be, v);
          }
      b->mult.emplace(std::make_pair(d1, d2), std::move(m));
    }

  // differential: d(a1 + b1 e) = d a1 + (-1)^{deg b1} b1 x  +  (d b1) e
  for (const auto& [d, n] : dims) {
    if (!dims.count(d + 1)) continue;
    Matrix dd(f, static_cast<std::size_t>(dims[d + 1]), static_cast<std::size_t>(n));
    dd.paste(0, 0, a->d(d));
    // e-part source b1 in A^{d+1}: plain target gets (-1)^{d+1} b1 * x
    Matrix rx = a->left_mult_operator(0, lift, d + 1);  // x * b1 = b1 * x (x even)
    if (pow_sign(d + 1) < 0) rx = rx.negated();
    dd.paste(0, adim(d), rx);
    dd.paste(adim(d + 1), adim(d), a->d(d + 1));
    if (!dd.is_zero()) b->diff.emplace(d, std::move(dd));
  }

  b->unit = zero_vec(f, static_cast<std::size_t>(b->comps.dim(0)));
  for (std::size_t i = 0; i < a->unit.size(); ++i) b->unit[i] = a->unit[i];
  // degree-0 coordinates are inherited (the adjoined variable sits below 0)
  for (const auto& [v, cls] : a->var_classes) {
    Vec padded = zero_vec(f, static_cast<std::size_t>(b->comps.dim(0)));
    for (std::size_t i = 0; i < cls.size(); ++i) padded[i] = cls[i];
    b->var_classes[v] = padded;
  }
  assert_valid(*b);
  return b;
}

AlgebraPtr koszul_quotient_h0(const AlgebraPtr& a, const H0Data& h, const Vec& h0_class,
                              bool lift_tweak) {
  require(h0_class.size() == static_cast<std::size_t>(h.h0_dim), Errc::ShapeError,
          "class must live in H^0");
  Vec lift = h.reps.apply(h0_class);
  return koszul_quotient(a, lift, lift_tweak);
}

AlgebraPtr koszul_sequence(const AlgebraPtr& a, const std::vector<Vec>& xs) {
  // Degree-0 parts are canonically identified along the chain (the adjoined
  // exterior variable only contributes below degree 0), so each x lifts as
  // the same coordinate vector.
  AlgebraPtr cur = a;
  for (const auto& x : xs) {
    require(x.size() == static_cast<std::size_t>(a->dim(0)), Errc::ShapeError,
            "sequence element must live in A^0");
    Vec padded = zero_vec(a->field, static_cast<std::size_t>(cur->dim(0)));
    for (std::size_t i = 0; i < x.size(); ++i) padded[i] = x[i];
    cur = koszul_quotient(cur, padded);
  }
  return cur;
}

AlgebraPtr koszul_on_maximal_ideal(const AlgebraPtr& a) {
  H0Data h = h0(*a);
  std::vector<Vec> lifts;
  for (const auto& g : h.min_gens) lifts.push_back(h.reps.apply(g));
  AlgebraPtr k = koszul_sequence(a, lifts);
  const_cast<DgAlgebra&>(*k).name = a->name + "//m";
  return k;
}

AlgebraPtr ci_fiber(Field f, int c) {
  require(c >= 1, Errc::ShapeError, "ci_fiber needs c >= 1");
  Presentation p(f);
  for (int i = 1; i <= c; ++i) p.gens.push_back({"e" + std::to_string(i), -1});
  AlgebraPtr a = expand_presentation(p);
  const_cast<DgAlgebra&>(*a).name = "ci_fiber(" + std::to_string(c) + ")";
  return a;
}

MultiPoly ResolutionData::entry_d(int j, int row, int col) const {
  auto it = diff.find(j);
  if (it == diff.end()) return zero_poly();
  return it->second[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

MultiPoly ResolutionData::entry_mult(int i, int j, int row, int a, int b) const {
  auto it = mult.find({i, j});
  if (it == mult.end()) return zero_poly();
  int rj = ranks.count(j) ? ranks.at(j) : 0;
  return it->second[static_cast<std::size_t>(row)][static_cast<std::size_t>(a * rj + b)];
}

void validate_resolution_data(const ResolutionData& r) {
  const Field& f = r.field;
  auto rank = [&](int d) { return r.ranks.count(d) ? r.ranks.at(d) : 0; };
  require(rank(0) == 1, Errc::AxiomFailure, "resolution must have rank 1 in degree 0 (the unit)");
  for (const auto& [d, n] : r.ranks)
    require(d <= 0 && n >= 0, Errc::AxiomFailure, "ranks must sit in non-positive degrees");

  // d^2 = 0
  for (const auto& [j, m] : r.diff) {
    (void)m;
    if (rank(j + 2) == 0) continue;
    for (int row = 0; row < rank(j + 2); ++row)
      for (int col = 0; col < rank(j); ++col) {
        MultiPoly acc = r.zero_poly();
        for (int k = 0; k < rank(j + 1); ++k)
          acc = acc.add(r.entry_d(j + 1, row, k).mul(r.entry_d(j, k, col)));
        require(acc.is_zero(), Errc::AxiomFailure,
                "d^2 != 0 at degree " + std::to_string(j) + " entry (" + std::to_string(row) +
                    "," + std::to_string(col) + ")");
      }
  }
  // unit law
  for (const auto& [j, n] : r.ranks)
    for (int b = 0; b < n; ++b)
      for (int row = 0; row < n; ++row) {
        MultiPoly lhs = r.entry_mult(0, j, row, 0, b);
        MultiPoly expect = row == b ? MultiPoly::constant(f, r.base_vars, f.one()) : r.zero_poly();
        require(lhs.equal(expect), Errc::AxiomFailure,
                "unit law fails at degree " + std::to_string(j));
      }
  // graded commutativity and odd squares
  for (const auto& [i, ni] : r.ranks)
    for (const auto& [j, nj] : r.ranks) {
      if (rank(i + j) == 0) continue;
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < nj; ++b)
          for (int row = 0; row < rank(i + j); ++row) {
            MultiPoly lhs = r.entry_mult(i, j, row, a, b);
            MultiPoly rhs = r.entry_mult(j, i, row, b, a);
            if (pow_sign(static_cast<long long>(i) * j) < 0) rhs = rhs.negated();
            require(lhs.equal(rhs), Errc::AxiomFailure,
                    "graded commutativity fails at degrees (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
          }
    }
  for (const auto& [i, ni] : r.ranks) {
    if (i % 2 == 0 || rank(2 * i) == 0) continue;
    for (int a = 0; a < ni; ++a)
      for (int row = 0; row < rank(2 * i); ++row)
        require(r.entry_mult(i, i, row, a, a).is_zero(), Errc::AxiomFailure,
                "odd square nonzero at degree " + std::to_string(i));
  }
  // Leibniz
  for (const auto& [i, ni] : r.ranks)
    for (const auto& [j, nj] : r.ranks) {
      if (rank(i + j + 1) == 0) continue;
      for (int a = 0; a < ni; ++a)
        for (int b = 0; b < nj; ++b)
          for (int row = 0; row < rank(i + j + 1); ++row) {
            MultiPoly lhs = r.zero_poly();
            for (int k = 0; k < rank(i + j); ++k)
              lhs = lhs.add(r.entry_d(i + j, row, k).mul(r.entry_mult(i, j, k, a, b)));
            MultiPoly rhs = r.zero_poly();
            for (int k = 0; k < rank(i + 1); ++k)
              rhs = rhs.add(r.entry_mult(i + 1, j, row, k, b).mul(r.entry_d(i, k, a)));
            for (int k = 0; k < rank(j + 1); ++k) {
              MultiPoly t = r.entry_mult(i, j + 1, row, a, k).mul(r.entry_d(j, k, b));
              if (pow_sign(i) < 0) t = t.negated();
              rhs = rhs.add(t);
            }
            require(lhs.equal(rhs), Errc::AxiomFailure,
                    "Leibniz fails at degrees (" + std::to_string(i) + "," + std::to_string(j) +
                        ")");
          }
    }
  // associativity
  for (const auto& [i, ni] : r.ranks)
    for (const auto& [j, nj] : r.ranks)
      for (const auto& [l, nl] : r.ranks) {
        if (rank(i + j + l) == 0) continue;
        for (int a = 0; a < ni; ++a)
          for (int b = 0; b < nj; ++b)
            for (int c = 0; c < nl; ++c)
              for (int row = 0; row < rank(i + j + l); ++row) {
                MultiPoly lhs = r.zero_poly();
                for (int k = 0; k < rank(i + j); ++k)
                  lhs = lhs.add(r.entry_mult(i + j, l, row, k, c).mul(r.entry_mult(i, j, k, a, b)));
                MultiPoly rhs = r.zero_poly();
                for (int k = 0; k < rank(j + l); ++k)
                  rhs = rhs.add(r.entry_mult(i, j + l, row, a, k).mul(r.entry_mult(j, l, k, b, c)));
                require(lhs.equal(rhs), Errc::AxiomFailure,
                        "associativity fails at degrees (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(l) + ")");
              }
      }
}

AlgebraPtr fiber_from_dg_resolution(const ResolutionData& r) {
  validate_resolution_data(r);
  const Field& f = r.field;
  auto a = std::make_shared<DgAlgebra>(f);
  a->name = "fiber";
  auto rank = [&](int d) { return r.ranks.count(d) ? r.ranks.at(d) : 0; };
  for (const auto& [d, n] : r.ranks)
    if (n > 0) a->comps.set_dim(d, n);
  for (const auto& [d, ls] : r.labels) a->comps.labels[d] = ls;
  for (const auto& [ij, entries] : r.mult) {
    auto [i, j] = ij;
    (void)entries;
    int dk = i + j;
    if (rank(dk) == 0 || rank(i) == 0 || rank(j) == 0) continue;
    Matrix m(f, static_cast<std::size_t>(rank(dk)),
             static_cast<std::size_t>(rank(i)) * static_cast<std::size_t>(rank(j)));
    for (int row = 0; row < rank(dk); ++row)
      for (int aa = 0; aa < rank(i); ++aa)
        for (int bb = 0; bb < rank(j); ++bb)
          m.at(static_cast<std::size_t>(row),
               static_cast<std::size_t>(aa) * static_cast<std::size_t>(rank(j)) +
                   static_cast<std::size_t>(bb)) = r.entry_mult(i, j, row, aa, bb).constant_term();
    a->mult.emplace(std::make_pair(i, j), std::move(m));
  }
  for (const auto& [j, entries] : r.diff) {
    (void)entries;
    if (rank(j + 1) == 0 || rank(j) == 0) continue;
    Matrix dd(f, static_cast<std::size_t>(rank(j + 1)), static_cast<std::size_t>(rank(j)));
    for (int row = 0; row < rank(j + 1); ++row)
      for (int col = 0; col < rank(j); ++col)
        dd.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) =
            r.entry_d(j, row, col).constant_term();
    if (!dd.is_zero()) a->diff.emplace(j, std::move(dd));
  }
  a->unit = unit_vec(f, 1, 0);
  assert_valid(*a);
  return a;
}

Vec eval_ring_element(const DgAlgebra& a, const MultiPoly& p) {
  const Field& f = a.field;
  require(!a.var_classes.empty() || p.vars().empty() || p.terms().empty() ||
              (p.terms().size() == 1 && p.terms().begin()->first ==
                                            MultiPoly::Exp(p.vars().size(), 0)),
          Errc::NameError, "algebra carries no presentation variables");
  Vec acc = zero_vec(f, static_cast<std::size_t>(a.dim(0)));
  for (const auto& [e, c] : p.terms()) {
    Vec term = a.unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto it = a.var_classes.find(p.vars()[i]);
      require(e[i] == 0 || it != a.var_classes.end(), Errc::NameError,
              "unknown presentation variable " + p.vars()[i]);
      for (std::uint32_t k = 0; k < e[i]; ++k) term = a.product(0, term, 0, it->second);
    }
    acc = add_vec(f, acc, scale_vec(f, c, term));
  }
  return acc;
}

ResolutionData koszul_resolution_data(Field f, const std::vector<std::string>& vars,
                                      const std::vector<MultiPoly>& seq) {
  int c = static_cast<int>(seq.size());
  ResolutionData r(f);
  r.base_vars = vars;
  r.ideal = seq;
  // subsets of {0..c-1} at degree -|S|, ordered lexicographically within size
  std::map<int, std::vector<std::vector<int>>> subsets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << c); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < c; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    subsets[-static_cast<int>(s.size())].push_back(std::move(s));
  }
  for (auto& [d, list] : subsets) {
    std::sort(list.begin(), list.end());
    r.ranks[d] = static_cast<int>(list.size());
    std::vector<std::string> ls;
    for (const auto& s : list) {
      std::string l = "e{";
      for (std::size_t i = 0; i < s.size(); ++i) l += (i ? "," : "") + std::to_string(s[i] + 1);
      ls.push_back(l + "}");
    }
    r.labels[d] = ls;
  }
  auto index_of = [&](int d, const std::vector<int>& s) {
    const auto& list = subsets.at(d);
    auto it = std::lower_bound(list.begin(), list.end(), s);
    return static_cast<int>(it - list.begin());
  };
  // differential: d(e_S) = sum_t (-1)^{pos(t)} f_t e_{S \ t}
  for (const auto& [d, list] : subsets) {
    if (d == 0) continue;
    int rows = r.ranks.at(d + 1);
    std::vector<std::vector<MultiPoly>> m(
        static_cast<std::size_t>(rows),
        std::vector<MultiPoly>(list.size(), r.zero_poly()));
    for (std::size_t col = 0; col < list.size(); ++col) {
      const auto& s = list[col];
      for (std::size_t t = 0; t < s.size(); ++t) {
        std::vector<int> rem;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != t) rem.push_back(s[i]);
        MultiPoly term = seq[static_cast<std::size_t>(s[t])];
        if (t % 2 != 0) term = term.negated();
        int row = index_of(d + 1, rem);
        m[static_cast<std::size_t>(row)][col] =
            m[static_cast<std::size_t>(row)][col].add(term);
      }
    }
    r.diff[d] = std::move(m);
  }
  // multiplication: e_S e_T = sign * e_{S u T} when disjoint
  for (const auto& [di, li] : subsets)
    for (const auto& [dj, lj] : subsets) {
      int dk = di + dj;
      if (!subsets.count(dk)) continue;
      std::vector<std::vector<MultiPoly>> m(
          static_cast<std::size_t>(r.ranks.at(dk)),
          std::vector<MultiPoly>(li.size() * lj.size(), r.zero_poly()));
      for (std::size_t a = 0; a < li.size(); ++a)
        for (std::size_t b = 0; b < lj.size(); ++b) {
          Word merged;
          int sign;
          if (!merge_words(li[a], lj[b], merged, sign)) continue;
          int row = index_of(dk, merged);
          MultiPoly v = MultiPoly::constant(f, vars, sign < 0 ? f.from_int(-1) : f.one());
          m[static_cast<std::size_t>(row)][a * lj.size() + b] = v;
        }
      r.mult[{di, dj}] = std::move(m);
    }
  return r;
}

}  // namespace dgaudit
