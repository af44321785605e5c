#include "skeinhom/network.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <stdexcept>

#include "skeinhom/errors.hpp"
#include "skeinhom/parallel.hpp"

namespace skeinhom {

namespace {

std::vector<Arc> slot_chords(const PlanarTangle& t, std::span<const int> slot) {
  if (t.size() != static_cast<int>(slot.size())) throw InvalidBoundary("fill does not match slot size");
  std::vector<Arc> out;
  for (const auto& [p, q] : chords(t)) out.push_back({slot[p], slot[q]});
  return out;
}

// Calls visit on every k-bit subset of n bits.
template <typename F>
void for_each_popcount(int n, int k, F&& visit) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    visit(Labeling(0));
    return;
  }
  Labeling m = (Labeling(1) << k) - 1;
  const Labeling limit = Labeling(1) << n;
  while (m < limit) {
    visit(m);
    Labeling c = m & -m;
    Labeling r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

int min_depth(const Network& net) {
  int d = INT_MAX;
  for (const auto& f : net.families) d = std::min(d, f.complete_depth);
  return d;
}

}  // namespace

int AssembledNetwork::find(int degree, const NetworkGenerator& g) const {
  auto it = index.find(degree);
  if (it == index.end()) return -1;
  auto jt = it->second.find(g);
  return jt == it->second.end() ? -1 : jt->second;
}

std::vector<int> family_arc_base(const Network& net) {
  std::vector<int> base;
  int n = static_cast<int>(net.fixed.size());
  for (const auto& f : net.families) {
    base.push_back(n);
    for (const auto& s : f.slots) n += static_cast<int>(s.size()) / 2;
  }
  return base;
}

std::vector<Arc> network_arcs(const Network& net, std::span<const int> objects) {
  std::vector<Arc> arcs = net.fixed;
  for (std::size_t fi = 0; fi < net.families.size(); ++fi) {
    const auto& fam = net.families[fi];
    const auto& obj = fam.objects.at(objects[fi]);
    for (int s = 0; s < fam.slot_count(); ++s) {
      auto c = slot_chords(obj.fill.at(s), fam.slots[s]);
      arcs.insert(arcs.end(), c.begin(), c.end());
    }
  }
  return arcs;
}

StateVector act_on_slot(const StateVector& s, std::span<const int> slot, int arc_base, const HomElement& f) {
  const int h = f.source.size() / 2;
  auto src = slot_chords(f.source, slot);
  for (int k = 0; k < h; ++k)
    if (s.arcs().at(arc_base + k) != src[k]) throw InvalidBoundary("slot does not hold the source of the action");
  const int na = static_cast<int>(s.arcs().size());
  StateVector cur = disjoint_union(s, f.state);
  for (int k = 0; k < h; ++k) cur = surgery(cur, arc_base + k, na + k);
  std::vector<Arc> target = s.arcs();
  auto dst = slot_chords(f.target, slot);
  std::vector<int> rep(na);
  for (int i = 0; i < na; ++i) rep[i] = i;
  for (int k = 0; k < h; ++k) {
    target[arc_base + k] = dst[k];
    rep[arc_base + k] = na + h + k;
  }
  return transport(cur, std::move(target), rep);
}

HomElement swap_ends(const HomElement& f) {
  const int h = f.source.size() / 2;
  std::vector<int> rep(2 * h);
  for (int k = 0; k < h; ++k) {
    rep[k] = h + k;
    rep[h + k] = k;
  }
  return {f.target, f.source, transport(f.state, hom_arcs(f.target, f.source), rep)};
}

void check_family(const SlotFamily& f) {
  std::map<int, std::vector<const SlotArrow*>> out;
  for (const auto& a : f.arrows) out[a.from].push_back(&a);
  for (int o = 0; o < static_cast<int>(f.objects.size()); ++o) {
    std::map<int, StateVector> sums;
    for (const SlotArrow* a1 : out[o]) {
      for (const SlotArrow* a2 : out[a1->to]) {
        const auto& x = f.objects[o];
        const auto& z = f.objects[a2->to];
        StateVector total(std::vector<Arc>{});
        total.add(0, a1->coef * a2->coef);
        for (std::size_t s = 0; s < x.fill.size(); ++s) {
          HomElement first = a1->action[s] ? *a1->action[s] : hom_unit(x.fill[s]);
          HomElement second = a2->action[s] ? *a2->action[s] : hom_unit(f.objects[a1->to].fill[s]);
          HomElement c = pair_hom_elements(first, second);
          if (c.target != z.fill[s]) throw InvalidBoundary("arrow composite lands in the wrong fill");
          total = disjoint_union(total, c.state);
        }
        auto [it, fresh] = sums.try_emplace(a2->to, total);
        if (!fresh) it->second += total;
      }
    }
    for (const auto& [t, v] : sums)
      if (!v.is_zero())
        throw ChainMapError("family d^2 != 0 from object " + f.objects[o].label + " to " + f.objects[t].label);
  }
}

Certificate network_certificate(const Network& net) {
  int slope = INT_MAX;
  for (const auto& f : net.families)
    if (!f.finite()) slope = std::min(slope, f.bound.slope);
  if (slope == INT_MAX) slope = 1;
  int intercept = 0;
  for (const auto& f : net.families) {
    if (!f.finite()) {
      intercept += f.bound.intercept;
      continue;
    }
    int best = INT_MAX;
    for (const auto& o : f.objects) best = std::min(best, o.shift - slope * (-o.degree));
    if (best != INT_MAX) intercept += best;
  }
  // Worst case Kh degree over every combination of distinct fills.
  std::vector<std::vector<int>> reps(net.families.size());
  for (std::size_t fi = 0; fi < net.families.size(); ++fi) {
    std::set<std::vector<PlanarTangle>> seen;
    const auto& objs = net.families[fi].objects;
    for (int o = 0; o < static_cast<int>(objs.size()); ++o)
      if (seen.insert(objs[o].fill).second) reps[fi].push_back(o);
  }
  int worst = 0;
  std::vector<int> pick(net.families.size());
  std::function<void(std::size_t)> walk = [&](std::size_t fi) {
    if (fi == net.families.size()) {
      worst = std::max(worst, trace_circles(network_arcs(net, pick)).size());
      return;
    }
    for (int o : reps[fi]) {
      pick[fi] = o;
      walk(fi + 1);
    }
  };
  walk(0);
  return {slope, intercept + floor_div(net.offset_quarters, 4) - worst};
}

AssembledNetwork assemble(const Network& net, int qmin, int qmax) {
  const int depth = min_depth(net);
  const int offset = integral_offset(net.offset_quarters);
  const int nf = static_cast<int>(net.families.size());
  for (const auto& f : net.families)
    if (!f.finite())
      for (const auto& o : f.objects)
        if (o.degree > 0) throw GradingError("truncated family with objects in positive degree");

  AssembledNetwork out;
  // Object tuples and their generators.
  std::vector<int> pick(nf);
  std::function<void(int, int, int)> walk = [&](int fi, int degree, int shift) {
    if (fi == nf) {
      if (depth != INT_MAX && degree < -depth) return;
      auto arcs = network_arcs(net, pick);
      const int c = trace_circles(arcs).size();
      const int base = offset + shift - c;
      // q = base + 2 * popcount
      int lo = qmin == INT_MIN ? 0 : std::max(0, -floor_div(base - qmin, 2));
      int hi = qmax == INT_MAX ? c : std::min(c, floor_div(qmax - base, 2));
      auto& gens = out.generators[degree];
      for (int p = lo; p <= hi; ++p) for_each_popcount(c, p, [&](Labeling l) { gens.push_back({pick, l}); });
      return;
    }
    for (int o = 0; o < static_cast<int>(net.families[fi].objects.size()); ++o) {
      const auto& obj = net.families[fi].objects[o];
      pick[fi] = o;
      walk(fi + 1, degree + obj.degree, shift + obj.shift);
    }
  };
  walk(0, 0, 0);

  auto& cx = out.complex;
  for (auto& [k, gens] : out.generators) {
    std::sort(gens.begin(), gens.end());
    auto& idx = out.index[k];
    GradedBasisModule m;
    for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
      const auto& g = gens[i];
      idx[g] = i;
      int shift = 0;
      std::string label;
      for (int fi = 0; fi < nf; ++fi) {
        const auto& obj = net.families[fi].objects[g.objects[fi]];
        shift += obj.shift;
        label += (fi ? "," : "") + obj.label;
      }
      auto arcs = network_arcs(net, g.objects);
      const int c = trace_circles(arcs).size();
      m.add({k, offset + shift + 2 * std::popcount(g.labeling) - c}, label + ":" + labeling_string(g.labeling, c));
    }
    cx.set_group(k, std::move(m));
  }
  if (out.generators.empty()) cx.set_group(0, {});

  const auto base = family_arc_base(net);
  std::vector<std::map<int, std::vector<const SlotArrow*>>> out_arrows(nf);
  for (int fi = 0; fi < nf; ++fi)
    for (const auto& a : net.families[fi].arrows) out_arrows[fi][a.from].push_back(&a);

  for (const auto& [k, gens] : out.generators) {
    auto tgt = out.generators.find(k + 1);
    const int rows = tgt == out.generators.end() ? 0 : static_cast<int>(tgt->second.size());
    std::vector<std::vector<MatrixEntry>> cols(gens.size());
    parallel_for(static_cast<int>(gens.size()), [&](int col) {
      const auto& g = gens[col];
      StateVector start(network_arcs(net, g.objects));
      start.add(g.labeling, 1);
      int sign_degree = 0;
      for (int fi = 0; fi < nf; ++fi) {
        const auto& fam = net.families[fi];
        const std::int64_t sign = sign_degree % 2 == 0 ? 1 : -1;
        sign_degree += fam.objects[g.objects[fi]].degree;
        auto it = out_arrows[fi].find(g.objects[fi]);
        if (it == out_arrows[fi].end()) continue;
        for (const SlotArrow* a : it->second) {
          StateVector s = start;
          int arc_base = base[fi];
          for (int sl = 0; sl < fam.slot_count(); ++sl) {
            if (a->action[sl]) s = act_on_slot(s, fam.slots[sl], arc_base, *a->action[sl]);
            arc_base += static_cast<int>(fam.slots[sl].size()) / 2;
          }
          NetworkGenerator t{g.objects, 0};
          t.objects[fi] = a->to;
          for (const auto& [l, c] : s.terms()) {
            t.labeling = l;
            int row = out.find(k + 1, t);
            if (row < 0) {
              if (depth != INT_MAX && k + 1 < -depth) continue;
              throw std::logic_error("differential leaves the assembled generators");
            }
            cols[col].push_back({row, col, sign * a->coef * c});
          }
        }
      }
    });
    SparseMatrix d(rows, static_cast<int>(gens.size()));
    for (const auto& entries : cols)
      for (const auto& e : entries) d.add(e.row, e.col, e.value);
    cx.set_differential(k, std::move(d));
  }
  if (depth == INT_MAX) {
    cx.set_finite(true);
  } else {
    cx.set_finite(false);
    cx.set_complete_from(-depth);
  }
  cx.set_q_window(qmin, qmax);
  cx.set_certificate(network_certificate(net));
  cx.check_gradings();
  cx.check_d_squared();
  return out;
}

SlotFamily family_cone(const SlotFamily& source, const SlotFamily& target, const FamilyMap& f) {
  if (source.slots.size() != target.slots.size()) throw InvalidBoundary("cone of families with different slots");
  SlotFamily c;
  c.slots = source.slots;
  const int ns = static_cast<int>(source.objects.size());
  for (auto o : source.objects) {
    o.degree -= 1;
    o.label = "s:" + o.label;
    c.objects.push_back(std::move(o));
  }
  for (auto o : target.objects) {
    o.label = "t:" + o.label;
    c.objects.push_back(std::move(o));
  }
  for (auto a : source.arrows) {
    a.coef = -a.coef;
    c.arrows.push_back(std::move(a));
  }
  for (auto a : f.arrows) {
    a.to += ns;
    c.arrows.push_back(std::move(a));
  }
  for (auto a : target.arrows) {
    a.from += ns;
    a.to += ns;
    c.arrows.push_back(std::move(a));
  }
  int ds = source.finite() ? INT_MAX : source.complete_depth + 1;
  c.complete_depth = std::min(ds, target.complete_depth);
  Certificate bs = source.bound, bt = target.bound;
  c.bound = {std::min(bs.slope, bt.slope), std::min(bs.intercept - bs.slope, bt.intercept)};
  if (target.finite()) {
    // A finite target needs its bound refitted to the cone's slope.
    int best = INT_MAX;
    for (const auto& o : target.objects) best = std::min(best, o.shift - c.bound.slope * (-o.degree));
    c.bound.slope = bs.slope;
    c.bound.intercept = std::min(bs.intercept - bs.slope, best);
  }
  return c;
}

}  // namespace skeinhom
