#include "twocover/commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twocover/branch.hpp"
#include "twocover/json_io.hpp"

namespace twocover::cli {

namespace {

using conic::ConicCover;
using conic::LineInP2;

struct CommonOpts {
  std::string input_path;
  std::string output_path;
  std::string format = "json";
  int jobs = 1;
  uint64_t seed = 0;
  int degree_bound = 4;
  long n_override = 0;
  bool has_n = false;
  std::string bidegree;
};

json load_input(const CommonOpts& opts)
{
  std::string text;
  if (opts.input_path.empty()) return json::object();
  if (opts.input_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(opts.input_path);
    if (!in) throw InputError("cannot open input file: " + opts.input_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("input is not valid JSON");
  return j;
}

void emit(const json& doc, const CommonOpts& opts, std::ostream& out)
{
  std::string rendered =
      opts.format == "text" ? render_text(doc) : doc.dump(2) + "\n";
  if (opts.output_path.empty() || opts.output_path == "-") {
    out << rendered;
    return;
  }
  std::ofstream f(opts.output_path);
  if (!f) throw InputError("cannot open output file: " + opts.output_path);
  f << rendered;
}

ConicCover cover_from_doc(const json& doc)
{
  if (!doc.contains("cover") || doc.at("cover") == "conic" ||
      doc.at("cover") == "default")
    return ConicCover::standard();
  if (doc.at("cover").is_object() && doc.at("cover").contains("F"))
    return ConicCover(parse_hompoly3(doc.at("cover").at("F").get<std::string>()));
  throw InputError("cover must be \"conic\" or {\"F\": \"<conic form>\"}");
}

std::vector<LineInP2> lines_from_doc(const ConicCover& cover, const json& doc,
                                     const CommonOpts& opts)
{
  std::vector<LineInP2> lines;
  if (doc.contains("lines"))
    for (const auto& l : doc.at("lines")) lines.push_back(line_from_json(l));
  if (doc.contains("tangent_b")) {
    std::vector<arith::Rational> bs;
    for (const auto& b : doc.at("tangent_b"))
      bs.push_back(arith::parse_rational(b.is_string() ? b.get<std::string>()
                                                       : b.dump()));
    for (auto& l : conic::tangent_lines(cover, bs)) lines.push_back(l);
  }
  if (doc.contains("coordinate_tangents") &&
      doc.at("coordinate_tangents").get<bool>()) {
    auto ct = conic::coordinate_tangent_lines(cover);
    lines.push_back(ct[0]);
    lines.push_back(ct[1]);
  }
  if (doc.contains("random_transversal")) {
    int count = doc.at("random_transversal").get<int>();
    for (auto& l : conic::random_transversal_lines(cover, count, opts.seed))
      lines.push_back(l);
  }
  return lines;
}

long get_n(const json& doc, const CommonOpts& opts)
{
  if (opts.has_n) return opts.n_override;
  if (!doc.contains("n")) throw InputError("missing exponent 'n'");
  return doc.at("n").get<long>();
}

int cmd_split_p1(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  if (!doc.contains("matrix")) throw InputError("missing 'matrix'");
  p1::P1TransitionData G(mat2r_from_json(doc.at("matrix")));
  auto s = p1::split_p1(G);
  json res = to_json(s);
  res["command"] = "split-p1";
  res["verified"] = p1::verify_factorization(G, s);
  emit(res, opts, out);
  return 0;
}

int cmd_trivialize_a1(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  if (!doc.contains("opens")) throw InputError("missing 'opens'");
  std::vector<arith::DistinguishedOpen> opens;
  for (const auto& h : doc.at("opens"))
    opens.emplace_back(parse_unipoly(h.get<std::string>()));

  std::optional<p1::AffineCocycle> cocycle;
  if (doc.contains("base_transitions")) {
    std::vector<arith::Mat2R> base;
    for (const auto& m : doc.at("base_transitions")) base.push_back(mat2r_from_json(m));
    cocycle = p1::AffineCocycle::from_base_transitions(opens, base);
  } else if (doc.contains("transitions")) {
    std::vector<std::vector<arith::Mat2R>> table;
    for (const auto& row : doc.at("transitions")) {
      std::vector<arith::Mat2R> r;
      for (const auto& m : row) r.push_back(mat2r_from_json(m));
      table.push_back(std::move(r));
    }
    cocycle = p1::AffineCocycle(opens, table);
  } else {
    throw InputError("need 'base_transitions' or 'transitions'");
  }

  auto A = trivialize_affine(*cocycle);
  json frames = json::array();
  for (const auto& m : A) frames.push_back(to_json(m));
  json res{{"command", "trivialize-a1"}, {"frames", frames}};
  emit(res, opts, out);
  return 0;
}

int cmd_pushforward(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  std::vector<long> exps;
  if (!doc.contains("exponents")) throw InputError("missing 'exponents'");
  for (const auto& e : doc.at("exponents")) exps.push_back(e.get<long>());
  if (exps.empty()) throw InputError("'exponents' must be nonempty");

  json res{{"command", "pushforward"}};
  std::string cover_name = doc.value("cover", std::string("conic"));
  if (cover_name == "p1-two-point") {
    auto pair = conic::two_point_cover_pair();
    std::vector<conic::P1Rep> pairs(exps.size(), pair);
    auto rep = dc::group_law<arith::RatFunc, arith::P1Chart>(pairs, exps);
    res["field"] = "p1";
    res["rep"] = to_json(rep);
  } else {
    ConicCover cover = cover_from_doc(doc);
    auto pair = standard_conic_pair(cover);
    std::vector<conic::P2Rep> pairs;
    if (doc.contains("pairs")) {
      for (const auto& p : doc.at("pairs"))
        pairs.push_back(p.is_string() && p == "standard" ? pair : p2rep_from_json(p));
    } else {
      pairs.assign(exps.size(), pair);
    }
    auto rep = dc::group_law<arith::P2Func, arith::P2Chart>(pairs, exps);
    res["field"] = "p2";
    res["rep"] = to_json(rep);
  }
  emit(res, opts, out);
  return 0;
}

int cmd_restrict_line(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  ConicCover cover = cover_from_doc(doc);
  if (!doc.contains("line")) throw InputError("missing 'line'");
  LineInP2 line = cover.to_internal(line_from_json(doc.at("line")));
  long n = opts.has_n ? opts.n_override
                      : (doc.contains("n") ? doc.at("n").get<long>() : 1);
  auto pair = standard_conic_pair(cover);
  auto rep = dc::group_law<arith::P2Func, arith::P2Chart>({pair}, {n});
  auto restricted = conic::restrict_to_line(rep, line);
  json res = to_json(restricted);
  res["command"] = "restrict-line";
  res["n"] = n;
  emit(res, opts, out);
  return 0;
}

int cmd_jumping_scan(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  ConicCover cover = cover_from_doc(doc);
  long n = get_n(doc, opts);
  auto lines = lines_from_doc(cover, doc, opts);
  if (lines.empty()) throw InputError("no lines given or generated");
  auto rows = conic::jumping_scan(cover, n, lines, opts.jobs);
  json jrows = json::array();
  for (const auto& row : rows)
    jrows.push_back({{"line", to_json(row.line)},
                     {"e", json::array({row.type.e1, row.type.e2})},
                     {"jumping", row.is_jumping}});
  json res{{"command", "jumping-scan"}, {"n", n}, {"rows", jrows}};
  emit(res, opts, out);
  return 0;
}

int cmd_sections(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  ConicCover cover = cover_from_doc(doc);
  long k1, k2;
  if (!opts.bidegree.empty()) {
    auto comma = opts.bidegree.find(',');
    if (comma == std::string::npos)
      throw InputError("--bidegree expects k1,k2");
    try {
      k1 = std::stol(opts.bidegree.substr(0, comma));
      k2 = std::stol(opts.bidegree.substr(comma + 1));
    } catch (const std::exception&) {
      throw InputError("--bidegree expects k1,k2");
    }
  } else {
    if (!doc.contains("bidegree")) throw InputError("missing 'bidegree'");
    const json& bd = doc.at("bidegree");
    if (!bd.is_array() || bd.size() != 2)
      throw InputError("'bidegree' must be [k1, k2]");
    k1 = bd[0].get<long>();
    k2 = bd[1].get<long>();
  }
  auto basis = conic::global_sections(cover, k1, k2, opts.degree_bound);
  json res = to_json(basis);
  res["command"] = "sections";
  emit(res, opts, out);
  return 0;
}

int cmd_branch_decompose(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  if (!doc.contains("F") || !doc.contains("f"))
    throw InputError("need branch form 'F' and linear form 'f'");
  arith::HomPoly3 F = parse_hompoly3(doc.at("F").get<std::string>());
  arith::HomPoly3 f = parse_hompoly3(doc.at("f").get<std::string>());
  json res{{"command", "branch-decompose"}};
  try {
    auto dec = dc::branch_decompose(F, f);
    if (dec) {
      res["found"] = true;
      res["a0"] = to_json(dec->first);
      res["a1"] = to_json(dec->second);
    } else {
      res["found"] = false;
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  emit(res, opts, out);
  return 0;
}

int cmd_validate(const CommonOpts& opts, std::ostream& out)
{
  json doc = load_input(opts);
  if (!doc.contains("rep")) throw InputError("missing 'rep'");
  std::string field = doc.value("field", std::string("p2"));
  dc::ValidationReport report;
  try {
    if (field == "p1")
      report = dc::validate_admissible(p1rep_from_json(doc.at("rep")));
    else if (field == "p2")
      report = dc::validate_admissible(p2rep_from_json(doc.at("rep")));
    else
      throw InputError("field must be \"p1\" or \"p2\"");
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  json defects = json::array();
  for (const auto& d : report.defects) defects.push_back(d);
  json res{{"command", "validate"}, {"valid", report.valid()}, {"defects", defects}};
  emit(res, opts, out);
  return report.valid() ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err)
{
  CLI::App app{"exact rank-2 bundle computations on double covers"};
  app.require_subcommand(1);
  CommonOpts opts;

  std::vector<std::pair<CLI::App*, int (*)(const CommonOpts&, std::ostream&)>> cmds;
  auto add = [&](const char* name, const char* desc,
                 int (*fn)(const CommonOpts&, std::ostream&)) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--input", opts.input_path, "input document (JSON); '-' = stdin");
    sub->add_option("--output", opts.output_path, "output file; '-' = stdout");
    sub->add_option("--format", opts.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--jobs", opts.jobs, "scan parallelism")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opts.seed, "seed for randomized line generation");
    sub->add_option("--degree-bound", opts.degree_bound, "section degree bound")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--n", opts.n_override, "exponent override")
        ->each([&](const std::string&) { opts.has_n = true; });
    sub->add_option("--bidegree", opts.bidegree, "bidegree k1,k2");
    cmds.emplace_back(sub, fn);
  };

  add("split-p1", "splitting type of a P^1 transition matrix", cmd_split_p1);
  add("trivialize-a1", "global frames of a 2-bundle on A^1", cmd_trivialize_a1);
  add("pushforward", "normal representation of a tensor-power push-forward",
      cmd_pushforward);
  add("restrict-line", "restrict a push-forward to a line", cmd_restrict_line);
  add("jumping-scan", "splitting types and jumping flags on a batch of lines",
      cmd_jumping_scan);
  add("sections", "global sections of phi_* O_X(k1,k2)", cmd_sections);
  add("branch-decompose", "branch decomposition F = a0^2 + f*a1",
      cmd_branch_decompose);
  add("validate", "validate an admissible-pair representation", cmd_validate);

  try {
    std::vector<const char*> argv;
    argv.push_back("twocover");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends.
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    for (auto& [sub, fn] : cmds)
      if (sub->parsed()) return fn(opts, out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace twocover::cli
