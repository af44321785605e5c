#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "skeinhom/barproj.hpp"
#include "skeinhom/errors.hpp"
#include "skeinhom/parallel.hpp"
#include "skeinhom/spin.hpp"
#include "skeinhom/surface.hpp"
#include "skeinhom/tqft.hpp"

using namespace skeinhom;
using namespace skeinhom::cli;

namespace {

struct JobConfig {
  std::string command;
  std::string spec, t, s, net, with;
  Window window;
  std::optional<int> depth;
  Format format = Format::pretty;
  int threads = 0;
  unsigned seed = 0;
};

json series_json(const std::map<int, mpz_class>& s) {
  json out = json::array();
  for (const auto& [e, c] : s) {
    if (c.fits_slong_p())
      out.push_back({e, c.get_si()});
    else
      out.push_back({e, c.get_str()});
  }
  return out;
}

std::string series_string(const std::map<int, mpz_class>& s) {
  BigLaurent p;
  for (const auto& [e, c] : s) p.add(e, c);
  return p.to_string();
}

// "[k] = ..." when the value is a quantum integer.
std::string named_value(const RationalFunction& v) {
  if (!v.is_zero() && v.denominator() == BigLaurent(mpz_class(1))) {
    const int k = v.numerator().max_exponent() + 1;
    if (k >= 1 && v == RationalFunction::quantum_integer(k)) return "[" + std::to_string(k) + "] = " + v.to_string();
  }
  return v.to_string();
}

HomComplex load_hom(const JobConfig& cfg) {
  const Surface surface = parse_surface(load_json(cfg.spec), cfg.spec);
  SurfaceTangle t = parse_tangle(load_json(cfg.t), cfg.t);
  SurfaceTangle s = parse_tangle(load_json(cfg.s), cfg.s);
  return HomComplex(surface, std::move(t), std::move(s), cfg.depth.value_or(-1), {}, cfg.window.hmin);
}

Report tl_basis(int points) {
  Report r;
  r.command = "tl basis";
  const auto all = enumerate_cap_tangles(points);
  json list = json::array();
  r.lines.push_back(std::to_string(all.size()) + " matchings on " + std::to_string(points) + " points");
  for (const auto& t : all) {
    list.push_back(t.literal());
    r.lines.push_back("  " + t.literal());
  }
  r.body = {{"points", points}, {"count", all.size()}, {"matchings", list}};
  return r;
}

Report kh_evaluate(const std::string& a, const std::string& b) {
  Report r;
  r.command = "kh eval";
  auto count = [](const std::string& lit) {
    int n = lit.find_first_of("0123456789") == std::string::npos ? 0 : 1;
    for (char c : lit) n += c == ',';
    return n;
  };
  const int n = count(a);
  const auto ta = PlanarTangle::parse(a, n, 0);
  const auto tb = PlanarTangle::parse(b, count(b), 0);
  if (tb.size() != n) throw InvalidBoundary("kh eval: " + a + " and " + b + " have different point counts");
  const auto d = pair_closure(ta, tb);
  const auto rank = kh_eval(d, 0).graded_rank();
  r.body = {{"a", ta.literal()}, {"b", tb.literal()}, {"circles", d.size()}, {"graded_rank", rank.to_string()}};
  r.lines.push_back(std::to_string(d.size()) + " circles, graded rank " + rank.to_string());
  return r;
}

Report ring_report(int m, int n) {
  Report r;
  r.command = "ring";
  const SmallRing ring(m, n);
  json objects = json::array(), hom = json::array();
  r.lines.push_back("objects of the (" + std::to_string(m) + "," + std::to_string(n) + ") ring:");
  for (int a = 0; a < ring.size(); ++a) {
    objects.push_back(ring.object(a).literal());
    r.lines.push_back("  " + std::to_string(a) + ": " + ring.object(a).literal());
  }
  r.lines.push_back("graded ranks of H(a,b):");
  for (int a = 0; a < ring.size(); ++a) {
    json row = json::array();
    std::string line = " ";
    for (int b = 0; b < ring.size(); ++b) {
      const auto g = ring.hom_basis(a, b).graded_rank().to_string();
      row.push_back(g);
      line += " [" + g + "]";
    }
    hom.push_back(row);
    r.lines.push_back(line);
  }
  r.body = {{"m", m}, {"n", n}, {"objects", objects}, {"hom_graded_rank", hom}};
  return r;
}

Report bproj_report(int strands, int depth, int qmax) {
  Report r;
  r.command = "bproj";
  const auto f = bproj_truncate(strands, depth);
  json degrees = json::array();
  for (const auto& [deg, mod] : object_counts(f)) {
    json gens = json::array();
    std::string line = "degree " + std::to_string(deg) + ":";
    for (int i = 0; i < mod.size(); ++i) {
      if (mod.degree(i).q > qmax) continue;
      gens.push_back({{"q", mod.degree(i).q}, {"object", mod.label(i)}});
      line += " q^" + std::to_string(mod.degree(i).q) + " " + mod.label(i);
    }
    degrees.push_back({{"degree", deg}, {"generators", gens}});
    r.lines.push_back(line);
  }
  json euler = json::object();
  for (const auto& [fill, poly] : euler_class(f)) {
    LaurentPoly cut;
    for (const auto& [e, c] : poly.terms())
      if (e <= qmax) cut.add(e, c);
    euler[fill.literal()] = cut.to_string();
    r.lines.push_back("euler " + fill.literal() + ": " + cut.to_string());
  }
  r.body = {{"strands", strands}, {"depth", depth}, {"qmax", qmax}, {"degrees", degrees}, {"euler", euler}};
  return r;
}

Report surface_hom(const JobConfig& cfg, BigradedHomology& keep) {
  Report r;
  r.command = "surface hom";
  const HomComplex c = load_hom(cfg);
  keep = hom_homology(c, cfg.window);
  r.table = &keep;
  r.body = homology_json(keep);
  r.body["depth"] = c.depth();
  r.lines.push_back("bar depth " + std::to_string(c.depth()));
  return r;
}

Report surface_h0(const JobConfig& cfg) {
  Report r;
  r.command = "surface h0";
  const Surface surface = parse_surface(load_json(cfg.spec), cfg.spec);
  const SurfaceTangle t = parse_tangle(load_json(cfg.t), cfg.t);
  const SurfaceTangle s = parse_tangle(load_json(cfg.s), cfg.s);
  json ranks = json::array();
  for (int q = cfg.window.qmin; q <= cfg.window.qmax; ++q) {
    const int k = h0(surface, t, s, q);
    ranks.push_back({{"q", q}, {"rank", k}});
    r.lines.push_back("q^" + std::to_string(q) + ": " + std::to_string(k));
  }
  r.body = {{"ranks", ranks}};
  return r;
}

Report coarsen_check(const JobConfig& cfg, const std::string& seam_id, BigradedHomology& keep) {
  Report r;
  r.command = "coarsen-check";
  const HomComplex fine = load_hom(cfg);
  const int seam = fine.surface().seam_index(seam_id);
  if (seam < 0) throw SpecError(cfg.spec + ": no seam named '" + seam_id + "'");
  const Window& w = cfg.window;
  const auto co = coarsen(fine, seam, w.qmin, w.qmax);
  keep = smith_homology(co.source_complex.complex, w);
  const auto closed = smith_homology(co.target_complex.complex, w);
  const Surface merged = remove_seam(fine.surface(), seam);
  const SurfaceTangle mt = merge_tangle(fine.surface(), fine.t(), seam);
  const SurfaceTangle ms = merge_tangle(fine.surface(), fine.s(), seam);
  const auto coarse = hom_homology(HomComplex(merged, mt, ms, fine.depth(), {}, w.hmin), w);
  const Window inner{w.hmin + 1, w.hmax, w.qmin, w.qmax};
  const bool acyclic = smith_homology(cone(co.source_complex.complex, co.target_complex.complex, co.map), inner).is_zero();
  const bool agree = keep == closed && closed == coarse;
  r.table = &keep;
  r.body = {{"seam", seam_id},  {"depth", fine.depth()}, {"fine", homology_json(keep)},
            {"coarse", homology_json(coarse)}, {"tables_agree", agree}, {"cone_acyclic", acyclic}};
  r.lines.push_back("seam " + seam_id + ", bar depth " + std::to_string(fine.depth()));
  r.lines.push_back(std::string("tables agree: ") + (agree ? "yes" : "no"));
  r.lines.push_back(std::string("cone acyclic on i >= ") + std::to_string(inner.hmin) + ": " + (acyclic ? "yes" : "no"));
  return r;
}

Report spin_theta(int a, int b, int c) {
  Report r;
  r.command = "spin theta";
  const auto v = theta(a, b, c);
  r.body = {{"colors", {a, b, c}}, {"admissible", admissible(a, b, c)}, {"value", v.to_string()}};
  r.lines.push_back(named_value(v));
  return r;
}

Report spin_pairing(const JobConfig& cfg) {
  Report r;
  r.command = "spin pairing";
  const auto x = parse_spin_network(load_json(cfg.net), cfg.net);
  RationalFunction v;
  if (cfg.with.empty()) {
    v = pairing_prediction(x);
  } else {
    v = cross_pairing(x, parse_spin_network(load_json(cfg.with), cfg.with));
  }
  r.body = {{"value", v.to_string()}};
  r.lines.push_back(named_value(v));
  try {
    const auto s = v.series(cfg.window.qmax);
    r.body["series"] = series_json(s);
    r.lines.push_back("series through q^" + std::to_string(cfg.window.qmax) + ": " + series_string(s));
  } catch (const std::domain_error&) {
    r.body["series"] = nullptr;
  }
  return r;
}

Report spin_crosscheck(const std::string& scenario, int order, const JobConfig& cfg) {
  Report r;
  r.command = "spin crosscheck";
  const auto c = euler_crosscheck(scenario, order, cfg.depth.value_or(-1));
  r.body = {{"scenario", c.scenario},
            {"order", c.order},
            {"depth", c.depth},
            {"prediction", c.prediction.to_string()},
            {"computed", series_json(c.computed)},
            {"predicted", series_json(c.predicted)},
            {"mismatches", c.mismatches}};
  r.lines.push_back(scenario + " through q^" + std::to_string(order) + " at bar depth " + std::to_string(c.depth));
  r.lines.push_back("computed:  " + series_string(c.computed));
  r.lines.push_back("predicted: " + series_string(c.predicted) + "  from " + c.prediction.to_string());
  r.lines.push_back(std::to_string(c.mismatches.size()) + " mismatches");
  return r;
}

int exit_code(const Error& e) {
  if (dynamic_cast<const TruncationError*>(&e)) return 2;
  if (dynamic_cast<const SpecError*>(&e) || dynamic_cast<const InvalidBoundary*>(&e)) return 3;
  return 1;
}

void report_error(const std::string& code, const std::string& message, Format f) {
  if (f == Format::json)
    std::cerr << json{{"schema", 1}, {"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
  else
    std::cerr << "error [" << code << "]: " << message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov-type skein homology of surfaces"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string out = "pretty";
  int depth = -1;
  app.add_option("--hmin", cfg.window.hmin, "lowest homological degree");
  app.add_option("--hmax", cfg.window.hmax, "highest homological degree");
  app.add_option("--qmin", cfg.window.qmin, "lowest quantum degree");
  app.add_option("--qmax", cfg.window.qmax, "highest quantum degree");
  app.add_option("--depth", depth, "bar depth override")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--threads", cfg.threads, "worker threads (default SKEINHOM_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  auto* tl = sub(&app, "tl", "Temperley-Lieb diagrams");
  tl->require_subcommand(1);
  int points = 0;
  auto* tl_b = sub(tl, "basis", "crossingless matchings of N points");
  tl_b->add_option("N", points)->required()->check(CLI::NonNegativeNumber);

  auto* kh = sub(&app, "kh", "Khovanov TQFT");
  kh->require_subcommand(1);
  std::string lit_a, lit_b;
  auto* kh_e = sub(kh, "eval", "graded rank of Kh of the closure of two cap tangles");
  kh_e->add_option("A", lit_a)->required();
  kh_e->add_option("B", lit_b)->required();

  int ring_m = 0, ring_n = 0;
  auto* ring = sub(&app, "ring", "objects and Hom ranks of the (M,N) ring");
  ring->add_option("M", ring_m)->required()->check(CLI::NonNegativeNumber);
  ring->add_option("N", ring_n)->required()->check(CLI::NonNegativeNumber);

  int strands = 2;
  auto* bproj = sub(&app, "bproj", "truncated bottom projector");
  bproj->add_option("--strands", strands)->required()->check(CLI::NonNegativeNumber);

  auto* surface = sub(&app, "surface", "surface Hom complexes");
  surface->require_subcommand(1);
  auto add_inputs = [&](CLI::App* s) {
    s->add_option("--spec", cfg.spec, "surface JSON")->required()->check(CLI::ExistingFile);
    s->add_option("--t", cfg.t, "source tangle JSON")->required()->check(CLI::ExistingFile);
    s->add_option("--s", cfg.s, "target tangle JSON")->required()->check(CLI::ExistingFile);
  };
  auto* s_hom = sub(surface, "hom", "Betti table of C(T|S)");
  add_inputs(s_hom);
  auto* s_h0 = sub(surface, "h0", "ranks of H^0 per quantum degree");
  add_inputs(s_h0);

  std::string seam_id;
  auto* coarsen_cmd = sub(&app, "coarsen-check", "compare a seam's coarsening with the merged surface");
  add_inputs(coarsen_cmd);
  coarsen_cmd->add_option("--seam", seam_id, "seam to close")->required();

  auto* spin = sub(&app, "spin", "spin networks");
  spin->require_subcommand(1);
  int ca = 0, cb = 0, cc = 0;
  auto* sp_theta = sub(spin, "theta", "theta graph value");
  sp_theta->add_option("A", ca)->required()->check(CLI::NonNegativeNumber);
  sp_theta->add_option("B", cb)->required()->check(CLI::NonNegativeNumber);
  sp_theta->add_option("C", cc)->required()->check(CLI::NonNegativeNumber);
  auto* sp_pair = sub(spin, "pairing", "predicted pairing of spin networks");
  sp_pair->add_option("--net", cfg.net, "spin network JSON")->required()->check(CLI::ExistingFile);
  sp_pair->add_option("--with", cfg.with, "second network for the cross pairing")->check(CLI::ExistingFile);
  std::string scenario;
  int order = 10;
  auto* sp_cross = sub(spin, "crosscheck", "Euler series against the decategorified prediction");
  sp_cross->add_option("--scenario", scenario)->required()->check(CLI::IsMember({"bproj2", "annulus", "strands0", "nabla112"}));
  sp_cross->add_option("--order", order)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 64;
  }

  cfg.format = out == "json" ? Format::json : out == "csv" ? Format::csv : Format::pretty;
  if (depth >= 0) cfg.depth = depth;
  const Window& w = cfg.window;
  if (w.hmin > w.hmax || w.qmin > w.qmax) {
    std::cerr << "window is empty: hmin <= hmax and qmin <= qmax are required\n" << app.help();
    return 64;
  }
  if (*bproj && !cfg.depth) {
    std::cerr << "bproj needs --depth\n" << app.help();
    return 64;
  }
  if (cfg.threads > 0) set_thread_count(cfg.threads);

  try {
    BigradedHomology table;
    Report r;
    if (*tl_b) r = tl_basis(points);
    else if (*kh_e) r = kh_evaluate(lit_a, lit_b);
    else if (*ring) r = ring_report(ring_m, ring_n);
    else if (*bproj) r = bproj_report(strands, *cfg.depth, w.qmax);
    else if (*s_hom) r = surface_hom(cfg, table);
    else if (*s_h0) r = surface_h0(cfg);
    else if (*coarsen_cmd) r = coarsen_check(cfg, seam_id, table);
    else if (*sp_theta) r = spin_theta(ca, cb, cc);
    else if (*sp_pair) r = spin_pairing(cfg);
    else r = spin_crosscheck(scenario, order, cfg);
    emit(std::cout, r, cfg.format);
  } catch (const Error& e) {
    report_error(e.code(), e.what(), cfg.format);
    return exit_code(e);
  } catch (const std::exception& e) {
    report_error("internal", e.what(), cfg.format);
    return 1;
  }
  return 0;
}
