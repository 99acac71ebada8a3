#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tautocycle/cycles.hpp"
#include "tautocycle/document.hpp"
#include "tautocycle/verify.hpp"

using namespace tc;
using nlohmann::json;

namespace {

struct Globals {
  bool json = false;
  unsigned seed = 1;
  int cutoff = 0;
  std::string range;
  long a = 0, b = 0, d = 0;
  std::string family;
};

struct Report {
  json j = json::object();
  std::vector<std::string> text;
  int code = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(long v) { return std::to_string(v); }

GradedIdeal load(const std::string& path) { return to_ideal(load_document(path)); }

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw UsageError("--range expects lo..hi");
  try {
    int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
    if (lo > hi) throw UsageError("--range: lo must not exceed hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--range expects integers lo..hi");
  }
}

std::vector<Rat> parse_rats(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

json rats_json(const std::vector<Rat>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(rat_str(x));
  return a;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

json hf_json(const std::map<int, long>& hf) {
  json o = json::object();
  for (auto& [n, v] : hf) o[std::to_string(n)] = num(v);
  return o;
}

MacaulayData curve_data(const Globals& g) {
  if (g.a <= 0 || g.b <= 0) throw UsageError("give --a and --b");
  return ab_to_dg(g.a, g.b);
}

int default_cutoff(const Globals& g, const GradedIdeal& I, int extra) {
  return g.cutoff > 0 ? g.cutoff : I.max_gen_degree() + extra;
}

void class_out(Report& r, const CycleClass& c) {
  auto labels = c.labels();
  for (size_t i = 0; i < c.q.size(); ++i) r.j[labels[i]] = rat_str(c.q[i]);
  r.text.push_back("class " + c.str() + " in basis " + join(labels));
}

// ------------------------------------------------------------------ commands

Report cmd_hf(const Globals& g, const std::string& file) {
  std::pair<int, int> window{-1, -1};
  if (!g.range.empty()) window = parse_range(g.range);
  GradedIdeal I = load(file);
  int lo = 0, hi = default_cutoff(g, I, 4);
  if (!g.range.empty()) std::tie(lo, hi) = window;
  auto hf = hilbert_function(I, lo, hi, 8);
  Report r;
  r.j["values"] = hf_json(hf);
  for (auto& [n, v] : hf) r.text.push_back(std::to_string(n) + " " + num(v));
  return r;
}

Report cmd_hp(const Globals& g, const std::string& file) {
  GradedIdeal I = load(file);
  IntPolynomial q = hilbert_polynomial(I, default_cutoff(g, I, 2), 8);
  Report r;
  r.j["polynomial"] = q.str();
  r.j["coefficients"] = rats_json(q.to_power());
  r.text.push_back("HP(I)(n) = " + q.str());
  r.j["macaulay"] = nullptr;
  if (I.nvars() == 4) {
    try {
      AdmissibleResult ad = admissible(q);
      json m;
      if (ad.plane) {
        m["plane_degree"] = num(ad.a);
        r.text.push_back("plane, a = " + num(ad.a));
      } else {
        m["a"] = num(ad.data.a);
        m["b"] = num(ad.data.b);
        m["d"] = num(ad.data.d);
        m["g"] = num(ad.data.g);
        r.text.push_back("(a,b) = (" + num(ad.data.a) + "," + num(ad.data.b) + "), (d,g) = (" +
                         num(ad.data.d) + "," + num(ad.data.g) + ")");
      }
      r.j["macaulay"] = m;
    } catch (const Error&) {
      r.text.push_back("not of the form Q(a,b)");
    }
  }
  return r;
}

Report cmd_reg(const Globals& g, const std::string& file) {
  GradedIdeal I = load(file);
  int reg = regularity(I, default_cutoff(g, I, 8), g.seed);
  Report r;
  r.j["regularity"] = num(reg);
  r.text.push_back("regularity " + num(reg));
  return r;
}

Report cmd_borel(const Globals&, const std::string& file) {
  bool b = is_borel_fixed(load(file));
  Report r;
  r.j["borel_fixed"] = b;
  r.text.push_back(b ? "Borel-fixed" : "not Borel-fixed");
  return r;
}

Report cmd_intersect(const Globals& g, const std::string& f1, const std::string& f2) {
  GradedIdeal I = load(f1), J = load(f2);
  if (!(I.ring == J.ring)) throw Error("cli.ring_mismatch", "the two ideals live in different rings");
  GradedIdeal K;
  if (I.is_monomial() && J.is_monomial() && I.param_free() && J.param_free()) {
    K = GradedIdeal::from_monomials(I.ring, minimalize(monomial_intersection(
                                                I.monomial_gens(), J.monomial_gens())));
  } else {
    int cut = g.cutoff > 0 ? g.cutoff : std::max(I.max_gen_degree(), J.max_gen_degree()) + 4;
    K = structured_intersection({I, J}, {"part", "part"}, cut);
  }
  Report r;
  r.j["vars"] = K.ring.vars;
  r.j["gens"] = K.gen_strings();
  r.text = K.gen_strings();
  return r;
}

Report cmd_decompose(const Globals& g, const std::string& file, const std::string& action,
                     int count) {
  CycleFamily F;
  if (!file.empty()) {
    GradedIdeal I = load(file);
    F.name = "input";
    F.ideal = I;
    if (g.d > 0) {
      F.plane_points = true;
      F.d_points = g.d;
    } else {
      F.m = curve_data(g);
    }
    if (!action.empty()) {
      int nv = I.nvars();
      if (action == "sigma")
        F.action = OneParamAction::sigma(nv);
      else if (action == "tau")
        F.action = OneParamAction::tau(nv);
      else if (action.size() == 4 && action.rfind("psi", 0) == 0)
        F.action = OneParamAction::psi(action[3] - '0', nv);
      else
        throw UsageError("--action is one of psi1, psi2, psi3, sigma, tau");
    }
  } else {
    if (g.family.empty()) throw UsageError("give --family or an ideal file");
    F = g.d > 0 ? std_point_family(g.family, g.d) : std_family(g.family, curve_data(g));
  }
  Decomposition D = decompose(F, g.seed, count);
  Report r;
  class_out(r, D.cls);
  std::string samples;
  for (auto& [n, v] : D.samples) samples += " " + std::to_string(n) + ":" + rat_str(v);
  r.text.push_back("samples" + samples);
  r.text.push_back("backend " + D.backend + ", isotropy " + num(D.isotropy));
  if (!g.range.empty()) {
    auto [lo, hi] = parse_range(g.range);
    FamilyEvaluator E(F, g.seed);
    json deg = json::object();
    for (int n = lo; n <= hi; ++n) {
      Rat v = E.degree(n);
      deg[std::to_string(n)] = rat_str(v);
      r.text.push_back("(M_" + std::to_string(n) + " . C) = " + rat_str(v));
    }
    r.j["degrees"] = deg;
  }
  return r;
}

Report cmd_complexity(const Globals& g, const std::string& file) {
  GradedIdeal I = load(file);
  Decomposition D = g.d > 0 ? complexity_points(I, g.d, g.seed) : complexity(I, curve_data(g), g.seed);
  Report r;
  class_out(r, D.cls);
  return r;
}

Report cmd_limit(const Globals& g, const std::string& file, const std::string& weights,
                 const std::string& to) {
  GradedIdeal I = load(file);
  std::vector<long> w(I.nvars(), 0);
  w.back() = 1;
  if (!weights.empty()) {
    w.clear();
    for (auto& s : split_list(weights, ',')) w.push_back(std::stol(s));
  }
  if (to != "zero" && to != "infinity") throw UsageError("--to is zero or infinity");
  LimitResult L = limit_ideal(I, w, to == "zero", default_cutoff(g, I, 3));
  Report r;
  r.j["gens"] = L.ideal.gen_strings();
  r.j["certified"] = L.certified;
  r.j["hf_source"] = hf_json(L.hf_source);
  r.j["hf_limit"] = hf_json(L.hf_limit);
  r.text.push_back("limit " + join(L.ideal.gen_strings()));
  r.text.push_back(L.certified ? "generators regenerate every slice" : "not certified");
  r.text.push_back(L.hf_source == L.hf_limit ? "Hilbert function preserved"
                                             : "Hilbert function changed");
  return r;
}

Report cmd_restrict(const Globals& g, const std::string& file, const std::string& form) {
  GradedIdeal I = load(file);
  GradedIdeal J = restrict_mod_linear(I, parse_form(form, I.ring), default_cutoff(g, I, 3));
  Report r;
  r.j["vars"] = J.ring.vars;
  r.j["gens"] = J.gen_strings();
  r.text = J.gen_strings();
  return r;
}

Report cmd_star(const Globals& g, const std::string& file) {
  GradedIdeal J = load(file);
  StarResult s = star_extension(J, default_cutoff(g, J, 3));
  Report r;
  r.j["vars"] = s.ideal.ring.vars;
  r.j["gens"] = s.ideal.gen_strings();
  r.j["verified"] = s.verified;
  r.text = s.ideal.gen_strings();
  r.text.push_back(s.verified ? "dimension count verified" : "dimension count FAILED");
  return r;
}

Report cmd_cm_split(const Globals& g, const std::string& file) {
  SplitIdeal S = cm_split(load(file), g.cutoff);
  Report r;
  r.j["cm_part"] = S.cm_part.gen_strings();
  r.j["punctual"] = json::array();
  r.text.push_back("cm part " + join(S.cm_part.gen_strings()));
  for (auto& p : S.punctual) {
    json o;
    o["point"] = rats_json(p.point);
    o["prime"] = p.prime.gen_strings();
    o["ideal"] = p.ideal.gen_strings();
    o["length"] = num(p.length);
    r.j["punctual"].push_back(o);
    std::vector<std::string> pt;
    for (auto& x : p.point) pt.push_back(rat_str(x));
    r.text.push_back("point (" + join(pt, ":") + ") length " + num(p.length) + " primary " +
                     join(p.ideal.gen_strings()));
  }
  r.j["total_length"] = num(S.total_length());
  return r;
}

Report cmd_chow(const Globals& g, const std::string& file) {
  CurveCycle C = hilbert_chow(load(file), g.cutoff);
  Report r;
  r.j["components"] = json::array();
  for (auto& c : C.comps) {
    json o;
    o["prime"] = c.key;
    o["multiplicity"] = num(c.multiplicity);
    r.j["components"].push_back(o);
  }
  r.text.push_back(C.str());
  return r;
}

Report cmd_fequiv(const Globals& g, const std::string& f1, const std::string& f2) {
  bool e = f_equiv(load(f1), load(f2), g.cutoff);
  Report r;
  r.j["equivalent"] = e;
  r.text.push_back(e ? "same fiber" : "different fibers");
  return r;
}

Report cmd_gfiber(const std::string& vars, const std::string& l, const std::string& factors,
                  const std::string& f) {
  RingSpec ring;
  if (!vars.empty()) ring.vars = split_list(vars, ',');
  ring.validate();
  long c;
  if (!factors.empty()) {
    std::vector<ParamForm> fs;
    for (auto& s : split_list(factors, ',')) fs.push_back(parse_form(s, ring));
    c = g_fiber_count(parse_form(l, ring), fs);
  } else if (!f.empty()) {
    c = g_fiber_count(parse_form(l, ring), parse_form(f, ring));
  } else {
    throw UsageError("give --factors or --f");
  }
  Report r;
  r.j["count"] = num(c);
  r.text.push_back(num(c) + " linear divisors");
  return r;
}

Report cmd_project(const std::string& p, const std::string& c, const std::string& h) {
  Point P = parse_rats(p), C = parse_rats(c), H = parse_rats(h);
  Point q = project_point(P, C, H);
  Point q2 = project_point_by_limit(P, C, H);
  Report r;
  r.j["point"] = rats_json(q);
  r.j["by_limit"] = rats_json(q2);
  r.j["agree"] = q == q2;
  std::vector<std::string> s;
  for (auto& x : q) s.push_back(rat_str(x));
  r.text.push_back("(" + join(s, ":") + ")" + (q == q2 ? "" : "  limit disagrees"));
  return r;
}

json matrix_json(const std::vector<std::vector<Rat>>& M) {
  json a = json::array();
  for (auto& row : M) a.push_back(rats_json(row));
  return a;
}

Report cmd_table(const Globals& g) {
  MacaulayData m = curve_data(g);
  TableReport T = intersection_table(m, g.seed, true);
  Report r;
  r.j["L"] = matrix_json(T.L);
  r.j["F"] = matrix_json(T.F);
  r.j["mb1_c2"] = rat_str(T.mb1_c2);
  r.j["ok"] = T.ok();
  r.j["mismatches"] = T.mismatches;
  IntPolynomial one = IntPolynomial::binom(0, 0);
  IntPolynomial c1 = IntPolynomial::binom(1 - m.b, 1);
  IntPolynomial c2 = IntPolynomial::binom(2 - m.a, 2) + c1;
  json fm;
  fm["M_n.C0"] = one.str();
  fm["M_n.C1"] = c1.str();
  fm["M_n.C2"] = c2.str();
  r.j["formulas"] = fm;
  r.code = T.ok() ? 0 : 1;
  r.text.push_back("(a,b) = (" + num(m.a) + "," + num(m.b) + "), rho = " + num(m.rho));
  r.text.push_back("(L_i . C_j):");
  for (auto& row : T.L) {
    std::vector<std::string> s;
    for (auto& x : row) s.push_back(rat_str(x));
    r.text.push_back("  " + join(s, "  "));
  }
  r.text.push_back("(F_i . Z_j):");
  for (auto& row : T.F) {
    std::vector<std::string> s;
    for (auto& x : row) s.push_back(rat_str(x));
    r.text.push_back("  " + join(s, "  "));
  }
  r.text.push_back("(M_{b-1} . C2) = " + rat_str(T.mb1_c2));
  r.text.push_back("for n >= a-3:");
  r.text.push_back("  (M_n . C0) = " + one.str());
  r.text.push_back("  (M_n . C1) = " + c1.str());
  r.text.push_back("  (M_n . C2) = " + c2.str());
  for (auto& s : T.mismatches) r.text.push_back("mismatch: " + s);
  return r;
}

Report cmd_verify(const Globals& g, const std::string& suite, int check, const std::string& root) {
  if (suite != "paper") throw UsageError("unknown suite '" + suite + "'");
  Report r;
  r.j["suite"] = suite;
  r.j["checks"] = json::array();
  int passed = 0, total = 0;
  auto each = [&](const CheckResult& c) {
    json o;
    o["id"] = c.id;
    o["title"] = c.title;
    o["pass"] = c.pass;
    o["detail"] = c.detail;
    r.j["checks"].push_back(o);
    r.text.push_back(format_check(c));
    if (!g.json) std::cout << r.text.back() << std::endl;
    passed += c.pass;
    ++total;
  };
  if (check > 0) {
    each(run_paper_check(check, g.seed, root));
  } else {
    run_paper_suite(g.seed, root, each);
  }
  r.j["passed"] = num(passed);
  r.j["total"] = num(total);
  r.text.push_back(num(passed) + "/" + num(total) + " criteria passed");
  if (!g.json) r.text.erase(r.text.begin(), r.text.end() - 1);
  r.code = passed == total ? 0 : 1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tautological cycles on Hilbert schemes of space curves"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--seed", g.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--cutoff", g.cutoff, "degree cutoff (default depends on the command)");
  app.add_option("--range", g.range, "degree range lo..hi");
  app.add_option("--a", g.a, "Macaulay coefficient a");
  app.add_option("--b", g.b, "Macaulay coefficient b");
  app.add_option("--d", g.d, "number of points in the plane");
  app.add_option("--family", g.family, "standard family name");

  std::string file, file2, action, weights, to = "zero", form = "t", vars, factors, f;
  std::string point, center, plane, suite = "paper";
  std::string root = TAUTOCYCLE_SOURCE_DIR;
  int count = 5, check = 0;

  auto one_file = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("file", file, "ideal file (JSON or one generator per line, - for stdin)")
        ->required();
    return s;
  };
  auto* hf = one_file("hf", "Hilbert function of the saturation");
  auto* hp = one_file("hp", "Hilbert polynomial and Macaulay coefficients");
  auto* reg = one_file("reg", "Castelnuovo-Mumford regularity via the generic initial ideal");
  auto* borel = one_file("borel", "Borel-fixedness of a monomial ideal");
  auto* inter = app.add_subcommand("intersect", "intersection of two ideals");
  inter->add_option("file", file)->required();
  inter->add_option("file2", file2)->required();
  auto* dec = app.add_subcommand("decompose", "class of a family in the cone basis");
  dec->add_option("file", file, "member ideal (otherwise --family)");
  dec->add_option("--action", action, "orbit of the file ideal under psi1..psi3, sigma or tau");
  dec->add_option("--count", count, "number of sampled degrees")->capture_default_str();
  auto* cx = one_file("complexity", "class of the sigma-orbit closure");
  auto* lim = one_file("limit", "limit under a one-parameter torus");
  lim->add_option("--weights", weights, "comma separated weights (default 0,..,0,1)");
  lim->add_option("--to", to, "zero or infinity")->capture_default_str();
  auto* res = one_file("restrict", "image modulo a linear form");
  res->add_option("--form", form, "linear form")->capture_default_str();
  auto* star = one_file("star", "extension to one more variable");
  auto* cms = one_file("cm-split", "CM part and punctual components");
  auto* chow = one_file("chow", "Hilbert-Chow cycle");
  auto* feq = app.add_subcommand("fequiv", "same CM part and same punctual cycle");
  feq->add_option("file", file)->required();
  feq->add_option("file2", file2)->required();
  auto* gf = app.add_subcommand("gfiber", "number of distinct linear divisors modulo a form");
  gf->add_option("--form", form, "the linear form")->capture_default_str();
  gf->add_option("--factors", factors, "comma separated linear factors");
  gf->add_option("--f", f, "a monomial or linear form");
  gf->add_option("--vars", vars, "comma separated variable names");
  auto* pr = app.add_subcommand("project", "projection of a point from a center to a plane");
  pr->add_option("--point", point)->required();
  pr->add_option("--center", center)->required();
  pr->add_option("--plane", plane)->required();
  auto* tab = app.add_subcommand("table", "intersection tables of the tautological bundles");
  auto* ver = app.add_subcommand("verify", "acceptance suite");
  ver->add_option("--suite", suite)->capture_default_str();
  ver->add_option("--check", check, "run a single check (1-12)");
  ver->add_option("--root", root, "repository directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report r;
  try {
    if (hf->parsed()) r = cmd_hf(g, file);
    else if (hp->parsed()) r = cmd_hp(g, file);
    else if (reg->parsed()) r = cmd_reg(g, file);
    else if (borel->parsed()) r = cmd_borel(g, file);
    else if (inter->parsed()) r = cmd_intersect(g, file, file2);
    else if (dec->parsed()) r = cmd_decompose(g, file, action, count);
    else if (cx->parsed()) r = cmd_complexity(g, file);
    else if (lim->parsed()) r = cmd_limit(g, file, weights, to);
    else if (res->parsed()) r = cmd_restrict(g, file, form);
    else if (star->parsed()) r = cmd_star(g, file);
    else if (cms->parsed()) r = cmd_cm_split(g, file);
    else if (chow->parsed()) r = cmd_chow(g, file);
    else if (feq->parsed()) r = cmd_fequiv(g, file, file2);
    else if (gf->parsed()) r = cmd_gfiber(vars, form, factors, f);
    else if (pr->parsed()) r = cmd_project(point, center, plane);
    else if (tab->parsed()) r = cmd_table(g);
    else if (ver->parsed()) r = cmd_verify(g, suite, check, root);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (g.json) {
      json err;
      err["error"] = {{"code", e.code}, {"message", e.what()}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error " << e.code << ": " << e.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (g.json)
    std::cout << r.j.dump(2) << "\n";
  else
    for (auto& line : r.text) std::cout << line << "\n";
  return r.code;
}
