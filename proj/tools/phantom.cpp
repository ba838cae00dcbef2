// phantom: command-line access to the lattice, linear-system, Hom, projection,
// hull and interpolation computations. JSON by default; --table renders the
// same payload.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phantom/deformation_quadratics.hpp"
#include "phantom/interpolation_oracle.hpp"
#include "phantom/notation.hpp"
#include "phantom/projection_engine.hpp"
#include "phantom/report_bundle.hpp"

using namespace phantom;
using nlohmann::json;

namespace {

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& payload, bool table) {
  if (!table) {
    std::cout << payload.dump(2) << "\n";
  } else if (payload.contains("items") && payload.contains("bundle")) {
    std::cout << render_table(payload);
  } else {
    flatten(payload, "", std::cout);
  }
}

// "lo..hi" or a single value
Interval parse_interval(const std::string& s) {
  auto dots = s.find("..");
  std::size_t used = 0;
  if (dots == std::string::npos) {
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad interval '" + s + "'");
    return {v, v};
  }
  std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
  Interval r{std::stoll(lo, &used), 0};
  if (used != lo.size()) throw std::invalid_argument("bad interval '" + s + "'");
  r.hi = std::stoll(hi, &used);
  if (used != hi.size()) throw std::invalid_argument("bad interval '" + s + "'");
  return r;
}

// "18x10", "3,2,2,1", "18x9,19": padded with zeros to ten points
std::array<std::int64_t, kNumPoints> parse_mults(const std::string& s) {
  std::array<std::int64_t, kNumPoints> m{};
  std::size_t at = 0;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto x = item.find('x');
    std::int64_t v = std::stoll(item.substr(0, x));
    std::int64_t count = x == std::string::npos ? 1 : std::stoll(item.substr(x + 1));
    for (std::int64_t k = 0; k < count; ++k) {
      if (at >= m.size()) throw std::invalid_argument("more than ten multiplicities");
      m[at++] = v;
    }
  }
  return m;
}

json split_json(const std::vector<SplitCase>& cases, const DivisorClass& total, int special) {
  json out = json::array();
  for (const auto& c : cases) {
    DivisorClass b = split_component(c, special);
    SystemVerdict vb = decide(b), vr = decide(total - b);
    out.push_back({{"case", {c.d, c.m, c.mp}},
                   {"component", b.to_string()},
                   {"component_verdict", to_string(vb)},
                   {"residual", (total - b).to_string()},
                   {"residual_verdict", to_string(vr)},
                   {"refuted", vb.is_empty() || vr.is_empty()}});
  }
  return out;
}

// pages keyed "p,q"
json page_json(const E1Page& p) {
  json out = json::object();
  for (const auto& [pq, v] : p.entries) out[std::to_string(pq.first) + "," + std::to_string(pq.second)] = v.to_string();
  return out;
}

json graded_json(const GradedDim& g) {
  json out = json::object();
  for (const auto& [k, v] : g.entries) out[std::to_string(k)] = v.to_string();
  return out;
}

void total_json(json& j, const E1Page& page, const std::map<PQ, std::int64_t>& ranks, int& exit_code) {
  try {
    GradedDim t = einfty_total(page, ranks);
    j["total"] = graded_json(t);
    j["euler"] = t.euler().to_string();
    if (!t.relations.empty()) {
      json rel = json::array();
      for (const auto& r : t.relations) rel.push_back(r.to_string());
      j["relations"] = rel;
    }
  } catch (const DegeneracyUnprovable& e) {
    j["total"] = nullptr;
    j["degeneracy"] = e.what();
    exit_code = 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phantom: exact computations on the blowup of P^2 at ten points"};
  app.require_subcommand(1);
  bool table = false;
  app.add_flag("--table", table, "render the payload as a table")->group("Output");
  app.add_flag_callback("--json", [&table] { table = false; }, "JSON output (default)")->group("Output");
  app.fallthrough();
  int exit_code = 0;

  // systems
  auto* systems = app.add_subcommand("systems", "linear systems |dH - sum m_i E_i|");
  systems->require_subcommand(1);
  std::string cls_text;
  auto* sdecide = systems->add_subcommand("decide", "decide emptiness or dimension with a proof trace");
  sdecide->add_option("class", cls_text, "divisor class, e.g. 19H-6E or 7H-4E1-2E2")->required();
  sdecide->callback([&] {
    DivisorClass c = parse_divisor_class(cls_text);
    json j = to_json(decide(c));
    j["class"] = c.to_string();
    j["chi"] = euler_char(c);
    emit(j, table);
  });
  auto* scremona = systems->add_subcommand("cremona", "Cremona reduction log");
  scremona->add_option("class", cls_text)->required();
  scremona->callback([&] {
    CremonaReduction r = cremona_reduce(parse_divisor_class(cls_text));
    json log = json::array();
    for (const auto& e : r.log)
      log.push_back({{"kind", e.kind == CremonaLogEntry::Kind::Step ? "step" : "clamp"},
                     {"before", e.before.to_string()},
                     {"after", e.after.to_string()}});
    emit({{"reduced", r.reduced.to_string()}, {"log", log}, {"next_step_negative", r.next_step_negative}}, table);
  });
  int special = 0;
  std::string total_text, box_text;
  auto* senum = systems->add_subcommand("enumerate", "candidate splits of a linear system");
  senum->add_option("--total", total_text, "total class, e.g. K-2F+D1 written out as a class")->required();
  senum->add_option("--special", special, "distinguished point (orbit constraint); 0 for a homogeneous total");
  senum->add_option("--box", box_text, "orbit box: d=0..14,m=0..9,mult=0..10[,mp=lo..hi]; mult bounds m+m'");
  senum->callback([&] {
    DivisorClass t = parse_divisor_class(total_text);
    CaseConstraint c;
    if (special == 0) {
      c = homogeneous_split_constraint(t);
    } else {
      std::map<std::string, Interval> box{{"d", {0, t.h() / 2}}, {"m", {0, t.mult(1 == special ? 2 : 1)}},
                                          {"mult", {0, t.mult(special)}}};
      std::stringstream ss(box_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--box items are key=lo..hi");
        std::string key = item.substr(0, eq);
        if (key == "mp-box") key = "mp";
        if (!(key == "d" || key == "m" || key == "mult" || key == "mp")) throw std::invalid_argument("unknown box key " + key);
        box[key] = parse_interval(item.substr(eq + 1));
      }
      c = orbit_split_constraint(t, special, box["d"], box["m"], box["mult"]);
      if (box.count("mp")) c.mp = {std::max(c.mp.lo, box["mp"].lo), std::min(c.mp.hi, box["mp"].hi)};
    }
    auto cases = enumerate_split_cases(t, c);
    emit({{"total", t.to_string()}, {"cases", split_json(cases, t, special == 0 ? 1 : special)}}, table);
  });

  // hom
  std::string obj_a, obj_b;
  auto* homc = app.add_subcommand("hom", "graded Hom dimensions between two objects");
  homc->add_option("a", obj_a, "line:<class> | sky:<label> | curve:n=<n>[,g=..][,deg=..][,label=..]")->required();
  homc->add_option("b", obj_b)->required();
  homc->callback([&] {
    GradedDim g = hom(parse_object(obj_a), parse_object(obj_b));
    json j = graded_json(g);
    if (!g.relations.empty()) {
      json rel = json::array();
      for (const auto& r : g.relations) rel.push_back(r.to_string());
      j["relations"] = rel;
    }
    if (g.generic) j["generic"] = true;
    emit(j, table);
  });

  // project
  auto* proj = app.add_subcommand("project", "projection spectral sequence and numerical projection");
  proj->require_subcommand(1);
  bool right = false;
  std::vector<std::string> d1_specs;
  auto* pe1 = proj->add_subcommand("e1", "E1 page and, when provable, the abutment");
  pe1->add_option("--from", obj_a, "source object K'")->required();
  pe1->add_option("--to", obj_b, "target object K")->required();
  pe1->add_flag("--right", right, "mirrored page for the right adjoint");
  pe1->add_option("--d1", d1_specs, "declared d1 rank as p,q=rank keyed by source; repeatable, e.g. --d1=-1,2=1");
  pe1->callback([&] {
    ObjectSpec a = parse_object(obj_a), b = parse_object(obj_b);
    auto coll = ExceptionalCollection::standard();
    E1Page page = right ? e1_page_right_adjoint(a, b, coll) : e1_page(a, b, coll);
    std::map<PQ, std::int64_t> ranks;
    for (const auto& spec : d1_specs) {
      auto comma = spec.find(','), eq = spec.find('=');
      if (comma == std::string::npos || eq == std::string::npos) throw std::invalid_argument("--d1 expects p,q=rank");
      ranks[{std::stoi(spec.substr(0, comma)), std::stoi(spec.substr(comma + 1, eq - comma - 1))}] =
          std::stoll(spec.substr(eq + 1));
    }
    json j = {{"from", to_string(a)}, {"to", to_string(b)}, {"page", page_json(page)}};
    total_json(j, page, ranks, exit_code);
    emit(j, table);
  });
  std::string case_name;
  std::int64_t case_n = 3;
  auto* pdims = proj->add_subcommand("dims", "graded totals for the three worked cases");
  pdims->add_option("--case", case_name, "skyscraper-same | skyscraper-distinct | curve")
      ->required()
      ->check(CLI::IsMember({"skyscraper-same", "skyscraper-distinct", "curve"}));
  pdims->add_option("--n", case_n, "curve case: n >= 3");
  pdims->callback([&] {
    auto coll = ExceptionalCollection::standard();
    E1Page page;
    std::map<PQ, std::int64_t> ranks;
    if (case_name == "curve") {
      CurveSheaf g = CurveSheaf::standard(case_n);
      page = e1_page(g, g, coll);
    } else {
      bool same = case_name == "skyscraper-same";
      page = e1_page(Skyscraper{"x"}, Skyscraper{same ? "x" : "y"}, coll);
      ranks[{-1, 2}] = d1_rank_skyscraper(same, coll.size());
    }
    json j = {{"case", case_name}, {"page", page_json(page)}};
    if (case_name == "curve") j["n"] = case_n;
    total_json(j, page, ranks, exit_code);
    emit(j, table);
  });
  auto* pclass = proj->add_subcommand("class", "numerical class and its projection through the collection");
  pclass->add_option("object", obj_a)->required();
  pclass->callback([&] {
    ObjectSpec o = parse_object(obj_a);
    auto coll = ExceptionalCollection::standard();
    NumClass v = num_class(o), p = project_numclass(v, coll);
    json pairings = json::array();
    for (const auto& c : coll.classes()) pairings.push_back(euler_pairing(num_class(line(c)), p));
    emit({{"object", to_string(o)},
          {"class", v.to_string()},
          {"projected", p.to_string()},
          {"pairings_with_collection", pairings}},
         table);
  });

  // hull
  auto* hullc = app.add_subcommand("hull", "quadratic part of the deformation hull");
  hullc->require_subcommand(1);
  hullc->add_subcommand("quadrics", "generators f_i, f_{i,j}")->callback([&] {
    json q = json::array();
    for (const auto& f : hull_quadrics()) q.push_back(f.to_string());
    emit({{"quadrics", q}}, table);
  });
  hullc->add_subcommand("rank", "rank and surviving tangent directions")->callback([&] {
    HullReport r = quadratic_dimension_bound();
    emit({{"rank", r.rank},
          {"b_product_rank", r.b_product_rank},
          {"all_x_monomials_in_span", r.all_x_monomials_in_span},
          {"y0y1_in_span", r.y0y1_in_span},
          {"surviving_directions", r.surviving_directions},
          {"statement", r.statement},
          {"pass", r.pass}},
         table);
    if (!r.pass) exit_code = 1;
  });

  // special-locus
  BundleOptions bopts;
  bopts.seed = default_seed();
  app.add_subcommand("special-locus", "classify the divisorial base loci")->callback([&] {
    ReportBundle b = run_bundle("special-locus", bopts);
    emit(b.payload, table);
    if (!b.pass) exit_code = 1;
  });

  // interp
  std::int64_t deg = 0;
  std::string mults = "0";
  auto* interp = app.add_subcommand("interp", "fat-point interpolation rank over F_p");
  interp->add_option("--d", deg, "degree");
  interp->add_option("--m", mults, "multiplicities: 18x10, 3,2,2,1 or 18x9,19");
  interp->add_option("--prime", bopts.prime, "prime below 2^32");
  interp->add_option("--seed", bopts.seed, "point sampling seed (default PHANTOM_SEED or 42)");
  auto* vg = interp->add_subcommand("verify-generality", "batch oracle-vs-decide comparison");
  vg->add_option("--list", bopts.list, "krah | special-locus | all");
  vg->callback([&] {
    ReportBundle b = run_bundle("generality", bopts);
    emit(b.payload, table);
    if (!b.pass) exit_code = 1;
  });
  interp->callback([&] {
    if (!vg->parsed()) {
      FatPointProblem p;
      p.d = deg;
      p.m = parse_mults(mults);
      p.prime = bopts.prime;
      p.seed = bopts.seed;
      RankResult r = interp_dim(p);
      emit({{"d", p.d},
            {"m", p.m},
            {"prime", p.prime},
            {"seed", p.seed},
            {"rows", r.rows},
            {"columns", r.columns},
            {"rank", r.rank},
            {"projective_dim", r.projective_dim}},
           table);
    }
  });

  // report
  std::string bundle;
  auto* report = app.add_subcommand("report", "run a named report bundle");
  report->add_option("bundle", bundle)->required()->check(CLI::IsMember(bundle_names()));
  report->add_option("--n", bopts.n, "curve bundle: n >= 3");
  report->add_option("--seed", bopts.seed, "seed (default PHANTOM_SEED or 42)");
  report->add_option("--prime", bopts.prime, "first prime for the generality bundle");
  report->add_option("--list", bopts.list, "generality bundle list: krah | special-locus | all");
  report->callback([&] {
    ReportBundle b = run_bundle(bundle, bopts);
    emit(b.payload, table);
    if (!b.pass) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
