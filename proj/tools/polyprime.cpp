// polyprime: structure, zig-zag walks, ideals and primality certificates for
// polyominoes, plus the closed-path enumeration harness.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "polyprime/families.hpp"
#include "polyprime/shape_io.hpp"

using namespace polyprime;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCounterexample = 2, kBudget = 3, kInput = 4 };

struct Common {
  std::string shape;
  std::string inline_shape;
  std::string format;  // grid | json | "" (guess)
  std::uint64_t budget_pairs = 0;
  std::uint64_t budget_degree = 0;
  double budget_seconds = 0;
  unsigned jobs = 1;
  bool json_out = false;
  std::string cache_dir;
};

std::optional<ShapeFormat> format_of(const std::string& f) {
  if (f == "grid") return ShapeFormat::Grid;
  if (f == "json") return ShapeFormat::Json;
  return std::nullopt;
}

Polyomino read_shape(const Common& c) {
  if (!c.inline_shape.empty()) {
    auto fmt = format_of(c.format);
    if (fmt == ShapeFormat::Json || (!fmt && c.inline_shape.find('[') != std::string::npos))
      return parse_json(c.inline_shape);
    std::string text = c.inline_shape;
    for (char& ch : text)
      if (ch == '/') ch = '\n';  // rows may be separated by '/'
    return parse_grid(text);
  }
  if (c.shape.empty()) throw ParseError("no shape given (file argument or --inline)", 0, 0);
  if (c.shape == "-") {
    std::string text{std::istreambuf_iterator<char>(std::cin), {}};
    return format_of(c.format) == ShapeFormat::Json ? parse_json(text) : parse_grid(text);
  }
  return load_shape(c.shape, format_of(c.format));
}

CertifyOptions certify_options(const Common& c) {
  CertifyOptions o;
  o.budget.max_pairs = c.budget_pairs;
  o.budget.max_degree = c.budget_degree;
  o.budget.max_seconds = c.budget_seconds;
  return o;
}

std::string fmt_point(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

int verdict_exit(const PrimalityVerdict& v) {
  if (v.certificate == PrimalityVerdict::Certificate::ContainmentOnly) return kBudget;
  if (v.kind == PrimalityVerdict::Kind::Inconclusive && v.reason.find("budget") != std::string::npos) return kBudget;
  return kOk;
}

int cmd_classify(const Common& c) {
  Polyomino p = read_shape(c);
  auto cert = closed_path_certificate(p);
  auto ls = find_l_configurations(p);
  auto ladders = find_ladders(p, 3);
  const auto hs = holes(p);
  if (c.json_out) {
    json j;
    j["cells"] = cells_json(p.cells());
    j["rank"] = p.rank();
    j["simple"] = hs.empty();
    j["holes"] = hs.size();
    j["closed_path"] = cert ? json(cells_json(cert->cycle)) : json(nullptr);
    json lj = json::array();
    for (const auto& l : ls) lj.push_back(cells_json(l.cells));
    j["l_configurations"] = lj;
    json dj = json::array();
    for (const auto& l : ladders) {
      json b = json::array();
      for (const auto& blk : l.blocks) b.push_back(cells_json(blk.cells));
      dj.push_back({{"orientation", to_string(l.orientation)}, {"blocks", b}});
    }
    j["ladders"] = dj;
    j["inner_intervals"] = inner_intervals(p).size();
    std::cout << j.dump() << '\n';
    return kOk;
  }
  std::cout << to_grid(p);
  std::cout << "rank: " << p.rank() << '\n';
  std::cout << "simple: " << (hs.empty() ? "yes" : "no") << '\n';
  std::cout << "holes: " << hs.size() << '\n';
  std::cout << "closed path: " << (cert ? "yes (n = " + std::to_string(cert->cycle.size()) + ")" : "no") << '\n';
  std::cout << "L-configurations: " << ls.size() << '\n';
  std::cout << "ladders (>= 3 steps): " << ladders.size() << '\n';
  std::cout << "inner intervals: " << inner_intervals(p).size() << '\n';
  return kOk;
}

int cmd_zigzag(const Common& c) {
  Polyomino p = read_shape(c);
  auto w = find_zigzag_walk(p);
  if (c.json_out) {
    std::cout << (w ? to_json(*w) : json(nullptr)).dump() << '\n';
    return kOk;
  }
  if (!w) {
    std::cout << "none\n";
    return kOk;
  }
  std::cout << "zig-zag walk of length " << w->length() << '\n';
  for (std::size_t i = 0; i < w->length(); ++i)
    std::cout << "  I" << i + 1 << " = [" << fmt_point(w->intervals[i].a) << "," << fmt_point(w->intervals[i].b)
              << "]  v=" << fmt_point(w->v[i]) << " z=" << fmt_point(w->z[i]) << " u=" << fmt_point(w->u[i]) << '\n';
  return kOk;
}

int cmd_ideal(const Common& c, const std::string& map, bool toric) {
  Polyomino p = read_shape(c);
  Ring ring = vertex_ring(p);
  auto gens = inner_minors(p, ring);
  std::optional<ToricMap> phi;
  if (map == "none") {
    phi = toric_map_marked(p, {});
  } else if (map == "lconfig") {
    auto ls = find_l_configurations(p);
    if (ls.empty()) throw InvalidFeatureError("no L-configuration");
    phi = toric_map_lconfig(p, ls.front());
  } else if (map == "ladder") {
    auto ld = find_ladders(p, 3);
    if (ld.empty()) throw InvalidFeatureError("no ladder with at least three steps");
    phi = toric_map_ladder(p, ld.front());
  } else if (!map.empty()) {
    throw InvalidFeatureError("unknown map '" + map + "' (none, lconfig, ladder)");
  }
  if (toric && !phi) phi = toric_map_marked(p, {});

  if (c.json_out) {
    json j;
    json names = json::array();
    for (std::size_t i = 0; i < ring.size(); ++i) names.push_back(ring.name(i));
    j["ring"] = names;
    json g = json::array();
    for (const auto& f : gens) g.push_back(format(ring, f));
    j["inner_minors"] = g;
    if (phi) {
      json im = json::object();
      for (std::size_t i = 0; i < phi->images.size(); ++i) im[ring.name(i)] = format(phi->target, phi->images[i]);
      json tn = json::array();
      for (std::size_t i = 0; i < phi->target.size(); ++i) tn.push_back(phi->target.name(i));
      j["map"] = {{"target", tn}, {"marked", points_json(phi->marked)}, {"images", im},
                  {"containment", check_containment(p, *phi)}};
    }
    if (toric) j["toric_ideal"] = to_json(ring, toric_ideal(*phi, certify_options(c).budget));
    std::cout << j.dump() << '\n';
    return kOk;
  }
  std::cout << export_generators(ring, gens);
  if (phi) {
    std::cout << "# map to " << phi->target.size() << " variables, " << phi->marked.size()
              << " marked vertices; containment: " << (check_containment(p, *phi) ? "yes" : "no") << '\n';
    for (std::size_t i = 0; i < phi->images.size(); ++i)
      std::cout << "# " << ring.name(i) << " -> " << format(phi->target, phi->images[i]) << '\n';
  }
  if (toric) {
    GroebnerBasis g = toric_ideal(*phi, certify_options(c).budget);
    std::cout << "# toric ideal, reduced basis under " << g.order.describe() << '\n';
    std::cout << export_generators(ring, g.generators);
  }
  return kOk;
}

int cmd_certify(const Common& c) {
  Polyomino p = read_shape(c);
  PrimalityVerdict v = certify_primality(p, certify_options(c));
  if (c.json_out)
    std::cout << to_json(v).dump() << '\n';
  else
    std::cout << v.summary() << '\n';
  return verdict_exit(v);
}

int cmd_enumerate(const Common& c, std::size_t max_rank) {
  for (const Polyomino& p : enumerate_closed_paths(max_rank, c.jobs)) {
    if (c.json_out)
      std::cout << json{{"rank", p.rank()}, {"cells", cells_json(p.cells())}}.dump() << '\n';
    else
      std::cout << "rank " << p.rank() << '\n' << to_grid(p) << '\n';
  }
  return kOk;
}

int cmd_verify(const Common& c, std::size_t max_rank, bool timings, bool no_certify) {
  HarnessOptions o;
  o.max_rank = max_rank;
  o.jobs = c.jobs;
  o.certify = certify_options(c);
  o.certify_shapes = !no_certify;
  o.timings = timings;
  o.cache_dir = c.cache_dir;
  HarnessReport r = verify_main_theorem(o, [&](const json& rec) {
    if (c.json_out) std::cout << rec.dump() << '\n';
  });
  if (c.json_out) {
    std::cout << r.summary.dump() << '\n';
  } else {
    std::cout << "closed paths up to rank " << max_rank << ": " << r.summary["shapes"] << '\n';
    for (const auto& b : r.summary["per_rank"])
      std::cout << "  rank " << b["rank"] << ": " << b["shapes"] << " shapes, " << b["zigzag"] << " with zig-zag walks, "
                << b["prime"] << " prime, " << b["nonprime"] << " non-prime, " << b["inconclusive"]
                << " inconclusive\n";
    std::cout << "minimal zig-zag rank: " << r.summary["minimal_zigzag_rank"] << '\n';
    std::cout << "budget exhausted: " << r.budget_exhausted << '\n';
    std::cout << "counterexamples: " << r.counterexamples << '\n';
  }
  if (r.counterexamples) return kCounterexample;
  if (r.budget_exhausted) return kBudget;
  return kOk;
}

int cmd_family(const Common& c, const std::string& spec_path, bool no_certify) {
  std::ifstream in(spec_path);
  if (!in) throw ParseError("cannot open " + spec_path, 0, 0);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0);
  }
  FamilyInstance inst = build_family(family_spec_from_json(doc));
  const Polyomino& p = inst.polyomino;
  json out;
  out["kind"] = to_string(inst.spec.kind);
  out["cells"] = cells_json(p.cells());
  out["holes"] = holes(p).size();
  if (inst.spec.kind == FamilySpec::Kind::GoodLRectangle) out["good"] = check_good_l_rectangle(p, inst.spec);
  int code = kOk;
  if (!no_certify) {
    PrimalityVerdict v = certify_family(p, inst.spec, certify_options(c));
    out["verdict"] = to_json(v);
    code = verdict_exit(v);
  }
  if (c.json_out) {
    std::cout << out.dump() << '\n';
  } else {
    std::cout << to_grid(p);
    std::cout << out["kind"].get<std::string>() << ": valid, " << out["holes"] << " hole(s)\n";
    if (out.contains("good")) std::cout << "good: " << (out["good"].get<bool>() ? "yes" : "no") << '\n';
    if (out.contains("verdict")) std::cout << out["verdict"]["summary"].get<std::string>() << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polyomino ideals: structure, zig-zag walks and primality certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  if (const char* env = std::getenv("POLYPRIME_CACHE")) c.cache_dir = env;
  std::string cache_flag;
  app.add_option("--format", c.format, "Shape format (default: from the file extension)")
      ->check(CLI::IsMember({"grid", "json"}));
  app.add_option("--budget-pairs", c.budget_pairs, "Maximum S-pairs per Groebner computation (0 = unlimited)");
  app.add_option("--budget-degree", c.budget_degree, "Maximum S-pair degree (0 = unlimited)");
  app.add_option("--budget-seconds", c.budget_seconds, "Wall-clock limit per certification (0 = unlimited)");
  app.add_option("--jobs", c.jobs, "Worker threads for enumerate/verify")->check(CLI::Range(1u, 1024u));
  app.add_flag("--json", c.json_out, "Structured JSON output");
  app.add_option("--cache-dir", cache_flag, "Harness cache directory (POLYPRIME_CACHE takes precedence)");

  auto shape_args = [&](CLI::App* sub) {
    sub->add_option("shape", c.shape, "Shape file (.grid or .json), or - for stdin");
    sub->add_option("--inline", c.inline_shape, "Shape given on the command line; grid rows separated by '/'");
  };
  auto* classify = app.add_subcommand("classify", "Structure facts: holes, closed path, L-configurations, ladders");
  shape_args(classify);
  auto* zigzag = app.add_subcommand("zigzag", "Search for a zig-zag walk");
  shape_args(zigzag);
  auto* ideal = app.add_subcommand("ideal", "Export the inner 2-minors and optionally a toric map / toric ideal");
  shape_args(ideal);
  std::string map;
  bool toric = false;
  ideal->add_option("--map", map, "Toric map: none, lconfig or ladder");
  ideal->add_flag("--toric", toric, "Also compute the toric ideal of the map");
  auto* certify = app.add_subcommand("certify", "Primality verdict with certificate");
  shape_args(certify);
  std::size_t max_rank = 12;
  auto* enumerate = app.add_subcommand("enumerate", "List closed paths up to a rank, one per symmetry class");
  enumerate->add_option("--max-rank", max_rank, "Largest number of cells")->check(CLI::Range(1, 40));
  auto* verify = app.add_subcommand("verify", "Run the closed-path verification harness");
  bool timings = false, no_certify = false;
  verify->add_option("--max-rank", max_rank, "Largest number of cells")->check(CLI::Range(8, 40));
  verify->add_flag("--timings", timings, "Add timings to the report (not reproducible)");
  verify->add_flag("--no-certify", no_certify, "Skip the toric certification step");
  auto* family = app.add_subcommand("family", "Validate and certify a family specification (JSON)");
  std::string spec_path;
  family->add_option("spec", spec_path, "Family specification file")->required();
  family->add_flag("--no-certify", no_certify, "Only validate the construction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  if (c.cache_dir.empty()) c.cache_dir = cache_flag;

  try {
    if (*classify) return cmd_classify(c);
    if (*zigzag) return cmd_zigzag(c);
    if (*ideal) return cmd_ideal(c, map, toric);
    if (*certify) return cmd_certify(c);
    if (*enumerate) return cmd_enumerate(c, max_rank);
    if (*verify) return cmd_verify(c, max_rank, timings, no_certify);
    if (*family) return cmd_family(c, spec_path, no_certify);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const GridError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const ConditionViolated& e) {
    std::cerr << "invalid family: " << e.what() << '\n';
    return kInput;
  } catch (const NotInSupportedClass& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kInput;
  } catch (const InvalidFeatureError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const BudgetExhausted& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}
