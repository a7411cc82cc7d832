#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pfmirror/automorphy.hpp"
#include "pfmirror/bundle.hpp"
#include "pfmirror/cone.hpp"
#include "pfmirror/errors.hpp"
#include "pfmirror/heisenberg.hpp"
#include "pfmirror/json_io.hpp"
#include "pfmirror/mirror.hpp"
#include "pfmirror/sampling.hpp"
#include "pfmirror/suite.hpp"

namespace pfm::cli {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

ordered ord(const json& j) { return ordered::parse(j.dump()); }

// Inline JSON, "-" for stdin, or a file path.
json load_document(const std::string& spec) {
  std::string text;
  if (spec == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
  } else if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) {
    text = spec;
  } else {
    std::ifstream in(spec);
    if (!in) throw InputError("cannot open input file " + spec);
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("input is missing \"") + key + "\"");
  return doc.at(key);
}

struct Common {
  std::string input;
  bool pretty = false;
  std::uint64_t seed = 0;
  int samples = 100;
  double tolerance = 1e-9;
};

int emit(std::ostream& out, const ordered& doc, const Common& c, bool pass) {
  out << (c.pretty ? doc.dump(2) : doc.dump()) << '\n';
  return pass ? kOk : kCheckFailed;
}

int cmd_validate(const Common& c, std::ostream& out) {
  const json doc = load_document(c.input);
  const TorusData torus = io::torus_from_json(require(doc, "torus"));
  const TorusValidation v = validate_torus(torus);
  ordered rep;
  rep["torus"] = ord(io::to_json(v));
  bool pass = v.valid();
  if (doc.contains("bundle")) {
    if (!v.valid()) {
      rep["bundle"] = "skipped: invalid torus";
    } else {
      const BundleData b = io::bundle_from_json(doc.at("bundle"), torus);
      const HolomorphyReport h = is_holomorphic(b, torus);
      rep["holomorphy"] = ord(io::to_json(h));
      rep["criteria_agree"] = h.holomorphic == h.curvature02_symmetric;
      pass = pass && h.holomorphic && h.holomorphic == h.curvature02_symmetric;
    }
  }
  rep["pass"] = pass;
  return emit(out, rep, c, pass);
}

int cmd_pairings(const Common& c, std::ostream& out) {
  const json doc = load_document(c.input);
  const TorusData torus = io::torus_from_json(require(doc, "torus"));
  require_valid(torus);
  const BundleData b = io::bundle_from_json(require(doc, "bundle"), torus);
  const GeneratorPairings gp = generator_pairings(b, torus);
  const PairingForm form = curvature_R(b, torus);
  ordered rep;
  if (form.four_pi_R) rep["four_pi_R"] = ord(io::to_json(*form.four_pi_R));
  json R = json::array();
  for (std::size_t i = 0; i < form.R.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < form.R.cols(); ++k) row.push_back(form.R(i, k));
    R.push_back(row);
  }
  rep["R"] = ord(R);
  rep["pairings"] = ord(io::to_json(gp));
  const bool pass = gp.r_real_symmetric && gp.imaginary_parts_match;
  rep["pass"] = pass;
  return emit(out, rep, c, pass);
}

int cmd_automorphy(const Common& c, std::ostream& out) {
  const json doc = load_document(c.input);
  const TorusData torus = io::torus_from_json(require(doc, "torus"));
  require_valid(torus);
  BundleData b = io::bundle_from_json(require(doc, "bundle"), torus);
  require_holomorphic(b, torus);
  ordered rep;
  if (!b.cocycle) {
    b.cocycle = construct_standard(b.r, b.A, b.r);
    if (!b.cocycle) {
      rep["error"] = "no transition matrices of rank r exist for this (r, A)";
      rep["minimal_dimension"] = minimal_dimension(b.r, b.A);
      rep["pass"] = false;
      return emit(out, rep, c, false);
    }
    rep["cocycle_source"] = "clock/shift construction";
  }
  const CocycleReport cr = verify_cocycle(*b.cocycle, b.r, b.A);
  rep["cocycle"] = ord(io::to_json(cr));
  if (!cr.valid || b.cocycle->rank != b.r) {
    rep["pass"] = false;
    return emit(out, rep, c, false);
  }

  Rng rng(c.seed);
  std::vector<CVector> points;
  for (int s = 0; s < c.samples; ++s) points.push_back(random_point(rng, torus));
  const GaugeReport g = gauge_and_conjugation_check(b, torus, points);
  const FactorOfAutomorphy foa(b, torus);
  double worst = 0.0;
  for (int s = 0; s < c.samples; ++s) {
    const LatticeVector g1 = random_lattice(rng, torus.n(), 2);
    const LatticeVector g2 = random_lattice(rng, torus.n(), 2);
    worst = std::max(worst, cocycle_residual(foa, g1, g2, random_point(rng, torus)));
  }
  rep["constants"] = ord(io::to_json(theorem36_constants(b, torus)));
  rep["script_A"] = ord(io::to_json(script_A(b, torus)));
  rep["gauge"] = ord(io::to_json(g));
  rep["cocycle_residual_max"] = worst;
  rep["tolerance"] = c.tolerance;
  const bool pass = g.t1_residual_max <= c.tolerance && g.conjugation_residual_max <= c.tolerance && g.t2 && g.t5 &&
                    g.t6 && worst <= c.tolerance;
  rep["pass"] = pass;
  return emit(out, rep, c, pass);
}

struct HeisenbergArgs {
  int r = 1;
  std::string A;
  int rank = 0;  // 0 means r
  int omega_exponent = 1;
  SearchLimits limits;
};

int cmd_construct(const Common& c, const HeisenbergArgs& h, std::ostream& out) {
  const IntMatrix A = io::int_matrix_from_text(h.A);
  const int rank = h.rank > 0 ? h.rank : h.r;
  const auto set = construct_standard(h.r, A, rank, h.omega_exponent);
  ordered rep;
  rep["m"] = minimal_dimension(h.r, A, h.omega_exponent);
  rep["rank"] = rank;
  rep["exists"] = set.has_value();
  rep["cocycle"] = set ? ord(io::to_json(*set)) : ordered(nullptr);
  return emit(out, rep, c, true);
}

int cmd_verify(const Common& c, const HeisenbergArgs& h, std::ostream& out) {
  const json doc = load_document(c.input);
  const IntMatrix A = h.A.empty() ? io::int_matrix_from_json(require(doc, "A")) : io::int_matrix_from_text(h.A);
  const int r = doc.contains("r") ? static_cast<int>(io::int_from_json(doc.at("r"))) : h.r;
  const json& set_doc = doc.contains("cocycle") ? doc.at("cocycle") : doc;
  const CocycleSet set = io::cocycle_from_json(set_doc, r);
  const CocycleReport rep = verify_cocycle(set, r, A, h.omega_exponent);
  ordered o = ord(io::to_json(rep));
  return emit(out, o, c, rep.valid);
}

int cmd_mindim(const Common& c, const HeisenbergArgs& h, std::ostream& out) {
  const IntMatrix A = io::int_matrix_from_text(h.A);
  const std::int64_t m = minimal_dimension(h.r, A, h.omega_exponent);
  ordered rep;
  rep["m"] = m;
  rep["exists_at_rank_r"] = h.r % m == 0;
  return emit(out, rep, c, true);
}

int cmd_search(const Common& c, const HeisenbergArgs& h, std::ostream& out) {
  const IntMatrix A = io::int_matrix_from_text(h.A);
  const int rank = h.rank > 0 ? h.rank : h.r;
  const SearchOutcome s = brute_force_search(h.r, A, rank, h.omega_exponent, h.limits);
  ordered rep;
  rep["found"] = s.found.has_value();
  rep["exhausted"] = !s.found.has_value();
  rep["nodes"] = s.nodes;
  rep["m"] = minimal_dimension(h.r, A, h.omega_exponent);
  rep["cocycle"] = s.found ? ord(io::to_json(*s.found)) : ordered(nullptr);
  return emit(out, rep, c, true);
}

int cmd_intersect(const Common& c, const std::string& mode, std::int64_t bound, std::ostream& out) {
  const json doc = load_document(c.input);
  const AffineLagrangian first = io::lagrangian_from_json(require(doc, "first"));
  const AffineLagrangian second = io::lagrangian_from_json(require(doc, "second"));
  std::optional<TorusData> torus;
  if (doc.contains("torus")) {
    torus.emplace(io::torus_from_json(doc.at("torus")));
    require_valid(*torus);
  }
  IntersectionOptions opt;
  opt.first = &first;
  opt.second = &second;
  opt.bound = bound;
  opt.float_tolerance = c.tolerance;
  if (mode == "covering") {
    opt.mode = IntersectionMode::covering;
  } else if (mode == "torus") {
    opt.mode = IntersectionMode::torus;
  } else if (mode == "float") {
    opt.mode = IntersectionMode::floating;
  } else {
    throw InputError("unknown mode " + mode);
  }
  const Theorem41Report r = theorem41_check(first, second, torus ? &*torus : nullptr, opt);
  ordered rep = ord(io::to_json(r));
  const AlphaBeta ab = alpha_beta(first, second);
  rep["alpha"] = ord(io::to_json(ab.alpha));
  rep["pass"] = r.theorem_satisfied;
  return emit(out, rep, c, r.theorem_satisfied);
}

int cmd_cone(const Common& c, std::ostream& out) {
  const json doc = load_document(c.input);
  const int r = static_cast<int>(io::int_from_json(require(doc, "r")));
  const int s = static_cast<int>(io::int_from_json(require(doc, "s")));
  const IntMatrix A = io::int_matrix_from_json(require(doc, "A"));
  const IntMatrix B = io::int_matrix_from_json(require(doc, "B"));
  if (r < 1 || s < 1) throw InputError("ranks must be positive");
  const ConeTarget target = cone_target(r, A, s, B);
  const int t = doc.contains("t") ? static_cast<int>(io::int_from_json(doc.at("t"))) : target.t;
  const IntMatrix C = doc.contains("C") ? io::int_matrix_from_json(doc.at("C")) : target.C;
  const ConeFlatness f = cone_projectively_flat(r, A, s, B);
  const ChernChain chain = chern_chain(r, A, s, B, t, C);
  ordered rep;
  rep["target"] = {{"t", target.t}, {"C", ord(io::to_json(target.C))}};
  rep["flatness"] = ord(io::to_json(f));
  rep["chern"] = ord(io::to_json(chain));
  bool pass = chain.c2_reduction_consistent;
  ordered ci = ordered::array();
  const int n = static_cast<int>(A.rows());
  for (int i = 3; i <= n; ++i) {
    const CiFactorization cf = ci_factorization_check(i, r, s, A, B);
    ci.push_back({{"i", i},
                  {"factorization_holds", cf.factorization_holds},
                  {"matches_chern_difference", cf.matches_chern_difference}});
    pass = pass && cf.factorization_holds && cf.matches_chern_difference;
  }
  rep["higher_chern"] = ci;
  rep["pass"] = pass;
  return emit(out, rep, c, pass);
}

int cmd_section5(const Common& c, const std::string& tau, const std::string& mu, const std::string& nu,
                 std::ostream& out) {
  const PiComplex t = parse_number(tau);
  if (!t.pi_free()) throw InputError("tau must be a Gaussian rational");
  const Section5Report r = section5_fixture(t.rational_part(), parse_number(mu), parse_number(nu));
  return emit(out, ord(io::to_json(r)), c, r.all());
}

std::vector<int> parse_only(const std::string& list) {
  std::vector<int> ids;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int id = 0;
    try {
      id = std::stoi(item);
    } catch (const std::exception&) {
      throw InputError("bad criterion id " + item);
    }
    if (id < 1 || id > 9) throw InputError("criterion ids are 1..9, got " + item);
    ids.push_back(id);
  }
  return ids;
}

int cmd_suite(const Common& c, SuiteOptions opt, const std::string& only, bool summary, std::ostream& out) {
  const std::vector<int> ids = parse_only(only);
  opt.seed = c.seed;
  opt.only = ids;
  std::erase(opt.only, 9);
  const bool want_determinism = ids.empty() || opt.only.size() != ids.size();
  const bool determinism_only = !ids.empty() && opt.only.empty();
  // Determinism compares two full runs even when only 9 is asked for.
  SuiteReport report = run_suite(opt);
  CriterionResult det;
  if (want_determinism) det = determinism_check(opt, report);
  if (determinism_only) report.criteria.clear();
  if (want_determinism) report.criteria.push_back(std::move(det));
  if (summary) {
    for (const auto& cr : report.criteria) {
      out << "criterion " << cr.id << ": " << (cr.pass ? "PASS" : "FAIL") << "  " << cr.name << "  [" << cr.summary
          << "]\n";
    }
    out << (report.pass() ? "all criteria pass" : "some criteria fail") << '\n';
    return report.pass() ? kOk : kCheckFailed;
  }
  return emit(out, ord(report.to_json()), c, report.pass());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks for projectively flat bundles on complex tori and their mirror Lagrangians"};
  app.name("pfmirror");
  app.require_subcommand(1);

  Common common;
  app.add_flag("--pretty", common.pretty, "Indent JSON output");

  auto input_opt = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("-i,--input", common.input, "JSON document: file path, '-' for stdin, or inline");
    if (required) o->required();
  };

  auto* validate = app.add_subcommand("validate", "Torus validity and holomorphy of a bundle");
  input_opt(validate);

  auto* pairings = app.add_subcommand("pairings", "Curvature form R and the pairing table on lattice generators");
  input_opt(pairings);

  auto* automorphy = app.add_subcommand("automorphy", "Factor of automorphy constants and residuals");
  input_opt(automorphy);
  automorphy->add_option("--seed", common.seed, "Sampling seed")->default_val(0);
  automorphy->add_option("--samples", common.samples, "Random points and lattice pairs")->default_val(100)->check(
      CLI::Range(1, 100000));
  automorphy->add_option("--tol", common.tolerance, "Residual tolerance")->default_val(1e-9);

  HeisenbergArgs h;
  auto* heis = app.add_subcommand("heisenberg", "Transition matrices with prescribed commutation phases");
  heis->require_subcommand(1);
  auto add_ra = [&](CLI::App* sub, bool need_a = true) {
    sub->add_option("--r", h.r, "Root of unity order")->required()->check(CLI::Range(1, 1 << 20));
    auto* a = sub->add_option("--A", h.A, "Integer matrix, e.g. [[1,0],[0,1]]");
    if (need_a) a->required();
    sub->add_option("--omega-exponent", h.omega_exponent, "omega = zeta_r^e")->default_val(1);
  };
  auto* construct = heis->add_subcommand("construct", "Clock/shift construction");
  add_ra(construct);
  construct->add_option("--rank", h.rank, "Matrix size (default r)")->check(CLI::Range(1, 4096));
  auto* verify = heis->add_subcommand("verify", "Check a set of transition matrices");
  add_ra(verify, false);
  input_opt(verify);
  auto* mindim = heis->add_subcommand("mindim", "Smallest matrix size admitting a solution");
  add_ra(mindim);
  auto* search = heis->add_subcommand("search", "Exhaustive search over monomial matrices");
  add_ra(search);
  search->add_option("--rank", h.rank, "Matrix size (default r)")->check(CLI::Range(1, 64));
  search->add_option("--max-rank", h.limits.max_rank, "Guard on the matrix size")->default_val(4);
  search->add_option("--max-n", h.limits.max_n, "Guard on the torus dimension")->default_val(2);
  search->add_option("--threads", h.limits.threads, "Worker threads, 0 = hardware")->default_val(0);

  std::string mode = "covering";
  std::int64_t bound = -1;
  auto* mirror = app.add_subcommand("mirror", "Affine Lagrangian multi-sections");
  mirror->require_subcommand(1);
  auto* intersect = mirror->add_subcommand("intersect", "Codimension of the intersection of two Lagrangians");
  input_opt(intersect);
  intersect->add_option("--mode", mode, "covering, torus or float")->default_val("covering");
  intersect->add_option("--bound", bound, "Torus mode shift bound K (default r*s)")->default_val(-1);
  intersect->add_option("--tol", common.tolerance, "Float mode tolerance")->default_val(1e-9);

  auto* cone = app.add_subcommand("cone", "Chern data of a mapping cone");
  cone->require_subcommand(1);
  auto* cone_check = cone->add_subcommand("check", "Projective flatness and Chern character equalities");
  input_opt(cone_check);

  std::string tau = "i", mu = "0", nu = "0";
  auto* fixture = app.add_subcommand("fixture", "Built-in worked examples");
  fixture->require_subcommand(1);
  auto* section5 = fixture->add_subcommand("section5", "Rank-2 cone on a 2-torus");
  section5->add_option("--tau", tau, "Period, Gaussian rational with positive imaginary part")->default_val("i");
  section5->add_option("--mu", mu, "Holonomy parameter of the rank-1 flat bundle")->default_val("0");
  section5->add_option("--nu", nu, "Holonomy parameter of the degree-1 line bundle")->default_val("0");

  std::string only;
  bool summary = false;
  SuiteOptions suite_opt;
  auto* suite = app.add_subcommand("suite", "Acceptance criteria 1..9");
  suite->add_option("--seed", common.seed, "Seed")->default_val(0);
  suite->add_option("--only", only, "Comma-separated criterion ids");
  suite->add_flag("--summary", summary, "One line per criterion instead of JSON");
  suite->add_option("--threads", suite_opt.threads, "Search worker threads, 0 = hardware")->default_val(0);
  suite->add_option("--samples", suite_opt.samples, "Random points per instance (automorphy criteria)")
      ->default_val(suite_opt.samples)
      ->check(CLI::Range(1, 100000));
  suite->add_option("--cocycle-tol", suite_opt.cocycle_tolerance, "Relative cocycle residual bound")
      ->default_val(suite_opt.cocycle_tolerance);
  suite->add_option("--gauge-tol", suite_opt.gauge_tolerance, "Gauge and conjugation residual bound")
      ->default_val(suite_opt.gauge_tolerance);
  suite->add_option("--fd-tol", suite_opt.fd_tolerance, "Finite-difference gauge residual bound")
      ->default_val(suite_opt.fd_tolerance);
  suite->add_option("--constant-tol", suite_opt.constant_tolerance, "Bound on the automorphy constant error")
      ->default_val(suite_opt.constant_tolerance);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(common, out);
    if (pairings->parsed()) return cmd_pairings(common, out);
    if (automorphy->parsed()) return cmd_automorphy(common, out);
    if (construct->parsed()) return cmd_construct(common, h, out);
    if (verify->parsed()) return cmd_verify(common, h, out);
    if (mindim->parsed()) return cmd_mindim(common, h, out);
    if (search->parsed()) return cmd_search(common, h, out);
    if (intersect->parsed()) return cmd_intersect(common, mode, bound, out);
    if (cone_check->parsed()) return cmd_cone(common, out);
    if (section5->parsed()) return cmd_section5(common, tau, mu, nu, out);
    if (suite->parsed()) return cmd_suite(common, suite_opt, only, summary, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const PreconditionError& e) {
    out << ordered{{"pass", false}, {"precondition_failed", e.what()}}.dump() << '\n';
    return kCheckFailed;
  }
  err << "error: no command\n";
  return kBadInput;
}

}  // namespace pfm::cli
