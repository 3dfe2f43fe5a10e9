// tautring4: command-line front end. Every coefficient is printed as "p/q".
// Exit codes: 0 success, 2 relation candidate (reduce), 1 error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "tautring4/calculus.hpp"
#include "tautring4/catalog.hpp"
#include "tautring4/descriptor.hpp"
#include "tautring4/io.hpp"
#include "tautring4/reports.hpp"

using namespace tautring4;

namespace {

constexpr int kCandidate = 2;

struct Options {
  int genus = -1;
  std::string markings;
  int codim = 0;
  int degree = 4;
  std::string format = "json";
  std::string input, input2;
  std::string boundary, forget, factor, block = "1,1", lemma = "piudisette", suite = "paper", catalog;
  bool dump = false, native_only = false;
  std::vector<int> only;
};

Ambient ambient_of(const Options& o) {
  if (o.genus < 0) throw std::invalid_argument("--genus must be >= 0");
  Ambient A{o.genus, split_markings(o.markings)};
  require_stable(A);
  return A;
}

TautExpression load(const std::string& path) {
  if (path != "-") return read_expression(path);
  json j;
  try {
    j = json::parse(std::cin);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("stdin: ") + e.what());
  }
  return expression_from_json(j);
}

void print_expression(const TautExpression& e, const std::string& format) {
  if (format == "pretty") std::cout << render(e);
  else std::cout << expression_to_json(e).dump(1) << "\n";
}

// "irr", or "a:A" with A a comma list, optionally braced ("1:x,y", "0:{a,b}", "2:").
Divisor parse_divisor(const Ambient& A, const std::string& spec) {
  if (spec == "irr") return make_divisor(A, true);
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("divisor must be 'irr' or 'a:A', got '" + spec + "'");
  int a = std::stoi(spec.substr(0, colon));
  std::string rest = spec.substr(colon + 1);
  if (rest.size() >= 2 && rest.front() == '{' && rest.back() == '}') rest = rest.substr(1, rest.size() - 2);
  auto S = split_markings(rest);
  for (auto& x : S)
    if (!A.has(x)) throw std::invalid_argument("marking '" + x + "' is not in " + A.text());
  Divisor D = make_divisor(A, false, a, S);
  divisor_graph(A.g, A.P, D);  // throws when unstable
  return D;
}

std::string monomial_name(const Ambient& A, const TautMonomial& m) {
  if (m.degree() == 0) return "1";
  if (m.degree() <= 2) {
    try {
      BasisClass b = describe(A, m);
      if (b.scale == 1) return b.name;
      return to_fraction(1 / b.scale) + " " + b.name;
    } catch (const std::exception&) {
    }
  }
  return graph_to_json(m.graph()).dump();
}

std::string class_name(const Ambient& F, int degree, int i) {
  if (degree == 0) return "1";
  return catalog(F, degree).basis().classes.at(i).name;
}

int cmd_graphs(const Options& o) {
  Ambient A = ambient_of(o);
  if (o.codim < 0 || o.codim > 2) throw std::invalid_argument("--codim must be 0, 1 or 2");
  for (auto& G : enumerate_stable_graphs(A.g, A.P, o.codim)) {
    if (o.format == "names") std::cout << family_name(G, A.g, A.P) << "\n";
    else std::cout << graph_to_json(G).dump() << "\n";
  }
  return 0;
}

int cmd_aut(const Options& o) {
  std::ifstream in(o.input);
  if (!in) throw std::runtime_error("cannot open " + o.input);
  StableGraph G = graph_from_json(json::parse(in));
  if (!G.connected()) throw std::invalid_argument("graph is not connected");
  if (!G.is_stable()) throw std::invalid_argument("graph is not stable");
  std::cout << aut_count(G) << "\n";
  return 0;
}

int cmd_basis(const Options& o) {
  Ambient A = ambient_of(o);
  EssentialBasis B;
  if (o.degree == 4) B = essential_basis(A);
  else if (o.degree == 2) B = degree1_basis(A);
  else throw std::invalid_argument("--degree is 2 or 4 (cohomological)");
  if (o.format == "pretty") {
    for (size_t i = 0; i < B.classes.size(); ++i) std::cout << i << "  " << B.classes[i].name << "\n";
    return 0;
  }
  json out = json::array();
  for (auto& c : B.classes) {
    TautExpression e(A);
    e.add(c.m, c.scale);
    json t = expression_to_json(e)["terms"];
    out.push_back({{"class", c.name}, {"terms", t}});
  }
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_normalize(const Options& o) {
  print_expression(normalize(load(o.input)), o.format);
  return 0;
}

int cmd_mul(const Options& o) {
  TautExpression a = load(o.input), b = load(o.input2);
  if (!(a.ambient() == b.ambient())) throw std::invalid_argument("factors live on different ambients");
  print_expression(a.degree() == 1 && b.degree() == 1 ? product_deg2(a, b) : multiply(a, b), o.format);
  return 0;
}

int cmd_pull(const Options& o) {
  TautExpression e = load(o.input);
  if (o.boundary.empty() == o.forget.empty()) throw std::invalid_argument("give exactly one of --boundary, --forget");
  if (!o.forget.empty()) {
    print_expression(forgetful_pullback(e, split_markings(o.forget)), o.format);
    return 0;
  }
  Divisor D = parse_divisor(e.ambient(), o.boundary);
  TensorExpr t = boundary_pullback(e, D);
  if (o.format != "pretty") {
    std::cout << tensor_to_json(t).dump(1) << "\n";
    return 0;
  }
  if (t.is_zero()) std::cout << "0\n";
  for (auto& [key, c] : t.terms) {
    std::cout << to_fraction(c) << " ";
    for (size_t k = 0; k < key.size(); ++k) std::cout << (k ? " x " : " ") << monomial_name(t.factors[k], key[k]);
    std::cout << "\n";
  }
  return 0;
}

int cmd_project(const Options& o) {
  TautExpression e = load(o.input);
  Divisor D = parse_divisor(e.ambient(), o.factor);
  int d0 = 0, d1 = 0;
  char comma = 0;
  std::istringstream bs(o.block);
  if (!(bs >> d0 >> comma >> d1) || comma != ',') throw std::invalid_argument("--block is 'd0,d1'");
  TensorCoords tc = tensor_coordinates(boundary_pullback(e, D));
  if (tc.candidate) {
    std::cerr << "relation candidate on a factor: " << tc.residual << "\n";
    return kCandidate;
  }
  if (tc.factors.size() == 1 && d1 != 0) throw std::invalid_argument("the irreducible divisor has one factor");
  json out;
  out["factors"] = json::array();
  for (auto& F : tc.factors) out["factors"].push_back({F.g, F.P});
  out["block"] = {d0, d1};
  out["coords"] = json::array();
  auto it = tc.blocks.find({d0, d1});
  int n1 = tc.factors.size() > 1 && d1 > 0 ? static_cast<int>(catalog(tc.factors[1], d1).basis().classes.size()) : 1;
  if (it != tc.blocks.end())
    for (auto& [idx, x] : it->second) {
      int i = d0 > 0 && d1 > 0 ? idx / n1 : (d0 > 0 ? idx : 0);
      int j = d0 > 0 && d1 > 0 ? idx % n1 : (d0 > 0 ? 0 : idx);
      std::string left = class_name(tc.factors[0], d0, i);
      std::string right = tc.factors.size() > 1 ? class_name(tc.factors[1], d1, j) : "";
      if (o.format == "pretty") {
        std::cout << to_fraction(x) << "  " << left << (right.empty() ? "" : " x " + right) << "\n";
      } else {
        json r = {{"row", i}, {"col", j}, {"left", left}, {"coeff", to_fraction(x)}};
        if (!right.empty()) r["right"] = right;
        out["coords"].push_back(r);
      }
    }
  if (o.format == "pretty") {
    if (it == tc.blocks.end()) std::cout << "0\n";
  } else {
    std::cout << out.dump(1) << "\n";
  }
  return 0;
}

int cmd_relations(const Options& o) {
  Ambient A = ambient_of(o);
  std::vector<Relation> rels;
  if (o.native_only) rels = native_relations(A);
  else rels = catalog(A, o.degree == 2 ? 1 : 2).relations();
  if (o.format == "pretty") {
    for (auto& r : rels) std::cout << "# " << r.id << " (" << r.provenance << ")\n" << render(r.expr);
    return 0;
  }
  json out = json::array();
  for (auto& r : rels) out.push_back(relation_to_json(r));
  std::cout << out.dump(1) << "\n";
  return 0;
}

int cmd_reduce(const Options& o) {
  TautExpression e = load(o.input);
  int degree = e.is_zero() ? 2 : e.degree();
  const Catalog& cat = catalog(e.ambient(), degree);
  Reduction r = cat.reduce(e);
  const auto& B = cat.basis();
  if (o.format == "pretty") {
    bool any = false;
    for (size_t i = 0; i < r.coords.size(); ++i)
      if (r.coords[i] != 0) any = true, std::cout << to_fraction(r.coords[i]) << "  " << B.classes[i].name << "\n";
    if (!any) std::cout << "0\n";
    if (r.candidate()) std::cout << "# relation candidate, residual:\n" << render(r.residual);
  } else {
    json out;
    out["ambient"] = {e.ambient().g, e.ambient().P};
    out["basis"] = json::array();
    out["coords"] = json::array();
    for (size_t i = 0; i < r.coords.size(); ++i) {
      out["basis"].push_back(B.classes[i].name);
      out["coords"].push_back(to_fraction(r.coords[i]));
    }
    out["candidate"] = r.candidate();
    if (r.candidate()) out["residual"] = expression_to_json(r.residual)["terms"];
    std::cout << out.dump(1) << "\n";
  }
  return r.candidate() ? kCandidate : 0;
}

int cmd_rederive(const Options& o) {
  Rederivation R = rederive_m32();
  std::cout << "# solution space from the four listed maps: " << R.listed_kernel_dim << "\n";
  std::cout << "# solution space" << (R.completed ? " with every boundary restriction" : "") << ": "
            << R.kernel_dim << "\n";
  if (R.kernel_dim == 1) print_expression(R.relation, o.format);
  return R.kernel_dim == 1 ? 0 : 1;
}

int cmd_rank(const Options& o) {
  Ambient A = ambient_of(o);
  RankReport R = rank_report(o.lemma, A);
  if (o.dump) {
    R.matrix.dump(std::cout);
    return 0;
  }
  std::cout << R.lemma << " " << A.text() << ": " << R.matrix.rows() << " x " << R.matrix.cols() << ", rank "
            << R.rank << (R.injective() ? " (injective)" : " (not injective)") << "\n";
  for (auto& b : R.blocks)
    std::cout << "  " << b.label << "  " << b.type << "  " << b.rows << " x " << b.cols << "  rank " << b.rank
              << (b.maximal() ? "" : "  (not maximal)") << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  if (o.suite != "paper") throw std::invalid_argument("unknown suite '" + o.suite + "'");
  bool ok = true;
  for (int id = 1; id <= acceptance::criterion_count(); ++id) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end()) continue;
    auto out = acceptance::run_criterion(id);
    ok = ok && out.pass;
    std::cout << acceptance::summary_line(out) << "\n";
    for (auto& n : out.notes) std::cout << "      " << n << "\n";
    std::cout.flush();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-4 tautological classes on moduli of stable pointed curves"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--catalog", o.catalog, "relation data file (overrides TAUTRING4_CATALOG)");

  auto ambient = [&](CLI::App* s) {
    s->add_option("--genus,-g", o.genus, "genus")->required();
    s->add_option("--markings,-m", o.markings, "comma-separated marking labels");
  };
  auto format = [&](CLI::App* s, std::vector<std::string> allowed) {
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
  };

  std::map<CLI::App*, std::function<int(const Options&)>> run;
  auto* graphs = app.add_subcommand("graphs", "list stable graphs of a given codimension");
  ambient(graphs);
  graphs->add_option("--codim,-k", o.codim, "number of edges (0..2)")->required();
  format(graphs, {"json", "names"});
  run[graphs] = cmd_graphs;

  auto* aut = app.add_subcommand("aut", "automorphism count of a graph");
  aut->add_option("graph", o.input, "graph JSON file")->required();
  run[aut] = cmd_aut;

  auto* basis = app.add_subcommand("basis", "essential basis B^4 (or the degree-2 standard basis)");
  ambient(basis);
  basis->add_option("--degree", o.degree, "cohomological degree: 4 or 2");
  format(basis, {"json", "pretty"});
  run[basis] = cmd_basis;

  auto* norm = app.add_subcommand("normalize", "merge isomorphic terms of an expression");
  norm->add_option("expr", o.input, "expression file, '-' for stdin")->required();
  format(norm, {"json", "pretty"});
  run[norm] = cmd_normalize;

  auto* mul = app.add_subcommand("mul", "product of two classes (total degree <= 2)");
  mul->add_option("e1", o.input)->required();
  mul->add_option("e2", o.input2)->required();
  format(mul, {"json", "pretty"});
  run[mul] = cmd_mul;

  auto* pull = app.add_subcommand("pull", "boundary or forgetful pull-back");
  pull->add_option("expr", o.input)->required();
  pull->add_option("--boundary", o.boundary, "irr or a:A");
  pull->add_option("--forget", o.forget, "markings to add, e.g. x,y");
  format(pull, {"json", "pretty"});
  run[pull] = cmd_pull;

  auto* project = app.add_subcommand("project", "coordinates of a boundary restriction in one bidegree");
  project->add_option("expr", o.input)->required();
  project->add_option("--factor", o.factor, "irr or a:A")->required();
  project->add_option("--block", o.block, "bidegree d0,d1 in algebraic degree (default 1,1 = H^2 x H^2)");
  format(project, {"json", "pretty"});
  run[project] = cmd_project;

  auto* rels = app.add_subcommand("relations", "relations known on an ambient");
  ambient(rels);
  rels->add_option("--degree", o.degree, "cohomological degree: 4 or 2");
  rels->add_flag("--native", o.native_only, "only the relations stored in the data file");
  format(rels, {"json", "pretty"});
  run[rels] = cmd_relations;

  auto* red = app.add_subcommand("reduce", "coordinates modulo the catalog; exit 2 on a relation candidate");
  red->add_option("expr", o.input)->required();
  format(red, {"json", "pretty"});
  run[red] = cmd_reduce;

  auto* m32 = app.add_subcommand("rederive-m32", "solve for the new relation on M_{3,{a,b}}");
  format(m32, {"json", "pretty"});
  run[m32] = cmd_rederive;

  auto* rank = app.add_subcommand("rank-report", "block ranks of the injectivity maps");
  ambient(rank);
  rank->add_option("--lemma", o.lemma)->check(CLI::IsMember({"piudisette", "due", "inj0h2"}));
  rank->add_flag("--dump", o.dump, "print the matrix as (row, col, \"p/q\") triplets");
  run[rank] = cmd_rank;

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"paper"}));
  verify->add_option("--only", o.only, "criterion numbers to run");
  run[verify] = cmd_verify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (!o.catalog.empty()) setenv("TAUTRING4_CATALOG", o.catalog.c_str(), 1);
  try {
    for (auto& [sub, fn] : run)
      if (sub->parsed()) return fn(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
