#include "tautring4/descriptor.hpp"

#include <set>

#include "tautring4/calculus.hpp"

namespace tautring4 {

namespace {

[[noreturn]] void bad(const std::string& d, const std::string& why) {
  throw GraphError("descriptor '" + d + "': " + why);
}

std::set<std::string> check_set(const Ambient& A, const std::vector<std::string>& S) {
  std::set<std::string> out;
  for (auto& x : S) {
    if (!A.has(x)) throw GraphError("marking '" + x + "' is not in P");
    if (!out.insert(x).second) throw GraphError("marking '" + x + "' repeated");
  }
  return out;
}

StableGraph finish(StableGraph G, const Ambient& A, const std::string& what) {
  for (int g : G.genus)
    if (g < 0) throw GraphError(what + " does not exist for " + A.text());
  if (!G.is_stable()) throw GraphError(what + " is unstable for " + A.text());
  return G;
}

}  // namespace

StableGraph stratum_F(const Ambient& A) {
  StableGraph G;
  G.add_vertex(A.g - 2);
  G.add_edge(0, 0);
  G.add_edge(0, 0);
  for (auto& p : A.P) G.legs[p] = HalfEdge{0, 0};
  return finish(G, A, "F");
}

StableGraph stratum_E(const Ambient& A, int a, const std::vector<std::string>& S) {
  auto s = check_set(A, S);
  StableGraph G;
  G.add_vertex(a);
  G.add_vertex(A.g - 1 - a);
  G.add_edge(0, 1);
  G.add_edge(0, 1);
  for (auto& p : A.P) G.legs[p] = HalfEdge{s.count(p) ? 0 : 1, 0};
  return finish(G, A, "E");
}

StableGraph stratum_H(const Ambient& A, int a, const std::vector<std::string>& S) {
  auto s = check_set(A, S);
  StableGraph G;
  G.add_vertex(a);
  G.add_vertex(A.g - 1 - a);
  G.add_edge(0, 0);
  G.add_edge(0, 1);
  for (auto& p : A.P) G.legs[p] = HalfEdge{s.count(p) ? 0 : 1, 0};
  return finish(G, A, "H");
}

StableGraph stratum_G(const Ambient& A, int a, const std::vector<std::string>& S, int b,
                      const std::vector<std::string>& T) {
  auto s = check_set(A, S), t = check_set(A, T);
  for (auto& x : s)
    if (t.count(x)) throw GraphError("G: marking '" + x + "' on two vertices");
  StableGraph G;
  G.add_vertex(a);
  G.add_vertex(b);
  G.add_vertex(A.g - a - b);
  G.add_edge(0, 1);
  G.add_edge(1, 2);
  for (auto& p : A.P) G.legs[p] = HalfEdge{s.count(p) ? 0 : t.count(p) ? 1 : 2, 0};
  return finish(G, A, "G");
}

namespace {

struct Parser {
  const std::string& src;
  std::string s;
  size_t i = 0;

  bool eat(const std::string& tok) {
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  void need(const std::string& tok) {
    if (!eat(tok)) bad(src, "expected '" + tok + "' at offset " + std::to_string(i));
  }
  bool at_end() const { return i >= s.size(); }
  int number() {
    size_t j = i;
    while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) bad(src, "expected a genus at offset " + std::to_string(i));
    int v = std::stoi(s.substr(i, j - i));
    i = j;
    return v;
  }
  std::string label() {
    size_t j = i;
    while (j < s.size() && (isalnum(static_cast<unsigned char>(s[j])) || s[j] == '\'' || s[j] == '_')) ++j;
    if (j == i) bad(src, "expected a marking at offset " + std::to_string(i));
    std::string v = s.substr(i, j - i);
    i = j;
    return v;
  }
  std::vector<std::string> set() {
    std::vector<std::string> out;
    if (eat("{}")) return out;
    need("{");
    out.push_back(label());
    while (eat(",")) out.push_back(label());
    need("}");
    return out;
  }
};

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '{' || c == '(') ++depth;
    if (c == '}' || c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string clean(const std::string& d) {
  std::string s;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == ' ') continue;
    if (d.compare(i, 3, "∅") == 0) {  // empty set sign
      s += "{}";
      i += 2;
      continue;
    }
    s += d[i];
  }
  for (auto [from, to] : {std::pair<std::string, std::string>{"kappa_1", "kappa1"}, {"kappa_2", "kappa2"},
                          {"delta_{irr}", "delta_irr"}, {"delta_{F}", "delta_F"}}) {
    size_t p;
    while ((p = s.find(from)) != std::string::npos) s.replace(p, from.size(), to);
  }
  return s;
}

TautExpression factor(const Ambient& A, const std::string& src, const std::string& f) {
  TautExpression e(A);
  StableGraph triv;
  triv.add_vertex(A.g);
  for (auto& p : A.P) triv.legs[p] = HalfEdge{0, 0};

  if (f == "1") {
    e.add(triv, 1);
    return e;
  }
  if (f == "kappa1" || f == "kappa2" || f == "kappa1^2") {
    triv.kappa[0] = f == "kappa1" ? std::vector<int>{1} : f == "kappa2" ? std::vector<int>{2} : std::vector<int>{1, 1};
    e.add(triv, 1);
    return e;
  }
  Parser p{src, f};
  if (p.eat("psi_")) {
    std::string x = p.label();
    if (!A.has(x)) bad(src, "marking '" + x + "' is not in P");
    int k = 1;
    if (p.eat("^")) k = p.number();
    if (!p.at_end()) bad(src, "trailing text after psi_" + x);
    triv.legs[x].psi = k;
    e.add(triv, 1);
    return e;
  }

  // a stratum, optionally with "psi|" / "kappa|" prefix or "|psi" / "|kappa" suffix
  std::string pre, post;
  auto bars = split_top(f, '|');
  std::string body;
  if (bars.size() == 1) {
    body = bars[0];
  } else if (bars.size() == 2 && (bars[0] == "psi" || bars[0] == "kappa")) {
    pre = bars[0];
    body = bars[1];
  } else if (bars.size() == 2 && (bars[1] == "psi" || bars[1] == "kappa")) {
    body = bars[0];
    post = bars[1];
  } else {
    bad(src, "cannot read '" + f + "'");
  }
  Parser q{src, body};
  StableGraph G;
  if (q.eat("delta_irr")) {
    if (!post.empty()) bad(src, "delta_irr|... is not a class name");
    G = divisor_graph(A.g, A.P, Divisor{});
    if (pre == "psi") {
      G.edges[0][0].psi = 1;
      e.add(G, 2);
      return e;
    }
    if (pre == "kappa") G.kappa[0] = {1};
  } else if (q.eat("delta_{")) {
    Divisor D;
    D.irr = false;
    D.a = q.number();
    q.need(",");
    D.S = q.set();
    q.need("}");
    check_set(A, D.S);
    G = divisor_graph(A.g, A.P, D);
    int side = !pre.empty() ? 0 : 1;
    std::string deco = !pre.empty() ? pre : post;
    if (deco == "psi") G.edges[0][side].psi = 1;
    if (deco == "kappa") G.kappa[side] = {1};
  } else {
    if (!pre.empty() || !post.empty()) bad(src, "only divisors carry '|' decorations");
    if (q.eat("delta_F")) {
      G = stratum_F(A);
    } else if (q.eat("delta_E(") || q.eat("delta_H(")) {
      bool isE = body[6] == 'E';
      int a = q.number();
      q.need(",");
      auto S = q.set();
      q.need(")");
      G = isE ? stratum_E(A, a, S) : stratum_H(A, a, S);
    } else if (q.eat("delta_G(")) {
      int a = q.number();
      q.need(",");
      auto S = q.set();
      q.need(",");
      int b = q.number();
      q.need(",");
      auto T = q.set();
      q.need(")");
      G = stratum_G(A, a, S, b, T);
    } else {
      bad(src, "unknown class '" + f + "'");
    }
  }
  if (!q.at_end()) bad(src, "trailing text in '" + body + "'");
  e.add(G, 1);
  return e;
}

}  // namespace

TautExpression make_class(const Ambient& A, const std::string& descriptor) {
  require_stable(A);
  std::string s = clean(descriptor);
  if (s.empty()) bad(descriptor, "empty");
  if (s.find('*') != std::string::npos) {
    for (auto& part : split_top(s, '*'))
      if (part.empty()) bad(descriptor, "empty factor");
  }
  auto parts = split_top(s, '*');
  TautExpression acc = factor(A, descriptor, parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) acc = multiply(acc, factor(A, descriptor, parts[i]));
  return acc;
}

}  // namespace tautring4
