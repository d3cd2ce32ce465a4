#include "arboreal/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace arboreal {

ParseError::ParseError(ParseDiagnostic d)
    : std::runtime_error(std::to_string(d.line) + ":" +
                         std::to_string(d.column) + ": " + d.message +
                         (d.expected.empty() ? "" : " (expected " + d.expected + ")")),
      diagnostic(std::move(d)) {}

namespace {

bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool done() const { return pos_ >= text_.size(); }

  char take() {
    char c = peek();
    advance();
    return c;
  }

  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& message,
                         const std::string& expected = "") const {
    throw ParseError({line_, column_, message, expected});
  }

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct NewickNode {
  std::string label;
  Rational length;
  std::vector<NewickNode> children;
};

Rational parse_length(Cursor& c) {
  c.skip_space();
  std::string token;
  while (!c.done() &&
         (std::isdigit(static_cast<unsigned char>(c.peek())) || c.peek() == '.' ||
          c.peek() == '/' || c.peek() == '-' || c.peek() == '+'))
    token += c.take();
  if (token.empty()) c.fail("missing branch length", "number");
  auto r = Rational::parse(token);
  if (!r) c.fail("malformed branch length '" + token + "'", "number");
  return *r;
}

NewickNode parse_newick_node(Cursor& c, bool need_length) {
  NewickNode node;
  c.skip_space();
  if (c.peek() == '(') {
    c.advance();
    while (true) {
      node.children.push_back(parse_newick_node(c, true));
      c.skip_space();
      if (c.peek() == ',') {
        c.advance();
        continue;
      }
      if (c.peek() == ')') {
        c.advance();
        break;
      }
      c.fail("unterminated group", "',' or ')'");
    }
    c.skip_space();
    while (!c.done() && label_char(c.peek())) node.label += c.take();
    if (!node.label.empty())
      c.fail("internal vertex labels are not supported", "':' or ';'");
  } else {
    while (!c.done() && label_char(c.peek())) node.label += c.take();
    if (node.label.empty()) c.fail("missing leaf label", "label");
  }
  if (need_length) {
    c.skip_space();
    if (c.peek() != ':') c.fail("missing branch length", "':'");
    c.advance();
    node.length = parse_length(c);
    if (!node.length.is_positive()) c.fail("nonpositive branch length");
  }
  return node;
}

void collect(const NewickNode& node, UndirectedGraph& g,
             std::map<Edge, Rational>& w, VertexId parent, Cursor& c) {
  VertexId me = g.add_vertex();
  if (node.children.empty()) {
    if (node.label.empty()) c.fail("missing leaf label", "label");
    if (g.label(me)) c.fail("duplicate label");
    for (VertexId v : g.labeled_vertices())
      if (*g.label(v) == node.label) c.fail("duplicate label '" + node.label + "'");
    g.set_label(me, node.label);
  }
  if (parent >= 0) {
    g.add_edge(parent, me);
    w[make_edge(parent, me)] = node.length;
  }
  for (const auto& child : node.children) collect(child, g, w, me, c);
}

}  // namespace

WeightedPhyloTree parse_newick(std::string_view text) {
  Cursor c(text);
  c.skip_space();
  if (c.peek() != '(') c.fail("tree must start with '('", "'('");
  NewickNode root = parse_newick_node(c, false);
  c.skip_space();
  if (c.peek() != ';') c.fail("missing ';'", "';'");
  c.advance();
  c.skip_space();
  if (!c.done()) c.fail("trailing characters after ';'");
  if (root.children.size() < 2)
    c.fail("root must have at least two children");

  UndirectedGraph g;
  std::map<Edge, Rational> w;
  collect(root, g, w, -1, c);
  // unrooted semantics: suppress a two-child root, summing its lengths
  VertexId r = 0;
  if (g.degree(r) == 2 && !g.label(r)) {
    auto nb = g.neighbors(r);
    auto it = nb.begin();
    VertexId a = *it++;
    VertexId b = *it;
    Rational sum = w.at(make_edge(r, a)) + w.at(make_edge(r, b));
    w.erase(make_edge(r, a));
    w.erase(make_edge(r, b));
    g.remove_vertex(r);
    g.add_edge(a, b);
    w[make_edge(a, b)] = sum;
  }
  try {
    return WeightedPhyloTree(std::move(g), std::move(w));
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

namespace {

std::string newick_node(const WeightedPhyloTree& t, VertexId v, VertexId parent) {
  if (t.graph().degree(v) <= 1 && t.label(v)) return *t.label(v);
  std::vector<std::string> parts;
  for (VertexId u : t.graph().neighbors(v)) {
    if (u == parent) continue;
    parts.push_back(newick_node(t, u, v) + ":" +
                    t.weight(make_edge(v, u)).str_preferring_decimal());
  }
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  s += ')';
  return s;
}

}  // namespace

std::string write_newick(const WeightedPhyloTree& t) {
  auto leaves = t.leaves();
  if (leaves.size() == 2) {
    auto labels = t.leaf_labels();
    Rational w = t.weight(make_edge(leaves[0], leaves[1]));
    return "(" + labels[0] + ":" + w.half().str_preferring_decimal() + "," +
           labels[1] + ":" + w.half().str_preferring_decimal() + ");";
  }
  // root at the internal vertex next to the smallest leaf label
  VertexId first = t.leaf_by_label(t.leaf_labels().front());
  VertexId root = *t.graph().neighbors(first).begin();
  return newick_node(t, root, -1) + ";";
}

ArborealNetwork parse_anet(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool relaxed = false;
  bool header_seen = false;
  ArborealNetwork net;
  std::set<std::pair<VertexId, VertexId>> seen_arcs;
  std::set<VertexId> leaf_declared;

  auto fail = [&](int col, const std::string& msg, const std::string& exp = "") {
    throw ParseError({lineno, col, msg, exp});
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!header_seen) {
      if (word != "anet") fail(1, "missing 'anet 1' header", "'anet'");
      std::string version, mode;
      ls >> version;
      if (version != "1") fail(6, "unsupported anet version '" + version + "'", "'1'");
      if (ls >> mode) {
        if (mode != "relaxed") fail(8, "unknown header flag '" + mode + "'", "'relaxed'");
        relaxed = true;
      }
      header_seen = true;
      continue;
    }
    if (word == "leaf") {
      long long vid;
      std::string label;
      if (!(ls >> vid) || vid <= 0) fail(6, "leaf needs a positive vertex id", "id");
      if (!(ls >> label)) fail(6, "leaf needs a label", "label");
      if (!std::all_of(label.begin(), label.end(), label_char))
        fail(6, "bad label '" + label + "'", "[A-Za-z0-9_]+");
      if (!leaf_declared.insert(static_cast<VertexId>(vid)).second)
        fail(6, "duplicate leaf line for vertex " + std::to_string(vid));
      net.add_vertex(static_cast<VertexId>(vid));
      try {
        net.set_label(static_cast<VertexId>(vid), label);
      } catch (const std::invalid_argument& e) {
        fail(6, e.what());
      }
    } else if (word == "arc") {
      long long uid, vid;
      std::string wtoken;
      if (!(ls >> uid >> vid) || uid <= 0 || vid <= 0)
        fail(5, "arc needs two positive vertex ids", "ids");
      if (!(ls >> wtoken)) fail(5, "arc needs a weight", "number");
      auto w = Rational::parse(wtoken);
      if (!w) fail(5, "malformed weight '" + wtoken + "'", "number");
      if (!seen_arcs.insert({static_cast<VertexId>(uid),
                             static_cast<VertexId>(vid)}).second)
        fail(5, "duplicate arc " + std::to_string(uid) + " -> " + std::to_string(vid));
      net.add_vertex(static_cast<VertexId>(uid));
      net.add_vertex(static_cast<VertexId>(vid));
      try {
        net.add_arc(static_cast<VertexId>(uid), static_cast<VertexId>(vid), *w);
      } catch (const std::invalid_argument& e) {
        fail(5, e.what());
      }
    } else {
      fail(1, "unknown directive '" + word + "'", "'leaf' or 'arc'");
    }
  }
  lineno = std::max(lineno, 1);
  if (!header_seen) fail(1, "missing 'anet 1' header", "'anet'");
  ValidationReport report = validate(net, relaxed);
  if (!report.ok) {
    std::string at;
    if (report.vertex) at = " at vertex " + std::to_string(*report.vertex);
    if (report.arc)
      at = " at arc " + std::to_string(report.arc->from) + " -> " +
           std::to_string(report.arc->to);
    fail(1, "invalid network: " + report.message + at);
  }
  return net;
}

std::string write_anet(const ArborealNetwork& n) {
  // compact renumbering, ids introduced in sorted order
  std::map<VertexId, long long> renum;
  long long next = 1;
  for (VertexId v : n.vertices()) renum[v] = next++;
  bool relaxed = false;
  for (VertexId leaf : n.leaves())
    if (n.indegree(leaf) > 1) relaxed = true;
  std::string out = relaxed ? "anet 1 relaxed\n" : "anet 1\n";
  for (VertexId v : n.vertices())
    if (const std::string* l = n.label(v))
      out += "leaf " + std::to_string(renum[v]) + " " + *l + "\n";
  auto arcs = n.arcs();
  std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) {
    return std::pair(renum[a.from], renum[a.to]) <
           std::pair(renum[b.from], renum[b.to]);
  });
  for (const Arc& a : arcs)
    out += "arc " + std::to_string(renum[a.from]) + " " +
           std::to_string(renum[a.to]) + " " + n.weight(a.from, a.to).str() + "\n";
  return out;
}

PartialDistance parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  auto fail = [&](int col, const std::string& msg, const std::string& exp = "") {
    throw ParseError({lineno, col, msg, exp});
  };
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream cs(s);
    while (std::getline(cs, cell, ',')) {
      // trim
      size_t a = cell.find_first_not_of(" \t\r");
      size_t b = cell.find_last_not_of(" \t\r");
      cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    if (!s.empty() && s.back() == ',') cells.push_back("");
    return cells;
  };

  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (!cells[0].empty()) fail(1, "first header cell must be empty", "','");
    for (size_t i = 1; i < cells.size(); ++i) {
      if (cells[i].empty()) fail(static_cast<int>(i + 1), "empty header label");
      if (!std::all_of(cells[i].begin(), cells[i].end(), label_char))
        fail(static_cast<int>(i + 1), "bad label '" + cells[i] + "'",
             "[A-Za-z0-9_]+");
      labels.push_back(cells[i]);
    }
    break;
  }
  if (labels.size() < 2) {
    lineno = std::max(lineno, 1);
    fail(1, "matrix needs at least two labels");
  }
  PartialDistance d(labels);
  size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (rows == labels.size()) fail(1, "more rows than labels");
    auto cells = split(line);
    if (cells.size() != labels.size() + 1)
      fail(1, "row has " + std::to_string(cells.size() - 1) + " entries, want " +
                  std::to_string(labels.size()));
    if (cells[0] != labels[rows])
      fail(1, "row label '" + cells[0] + "' does not match column '" +
                  labels[rows] + "'");
    for (size_t j = 0; j < labels.size(); ++j) {
      const std::string& cell = cells[j + 1];
      int col = static_cast<int>(j + 2);
      if (cell == "inf") {
        if (j == rows) fail(col, "diagonal entry must be 0");
        if (j < rows && d.at(rows, j).has_value())
          fail(col, "asymmetric entry at (" + labels[rows] + "," + labels[j] + ")");
        continue;
      }
      auto r = Rational::parse(cell);
      if (!r) fail(col, "malformed entry '" + cell + "'", "number or 'inf'");
      if (j == rows) {
        if (!r->is_zero()) fail(col, "diagonal entry must be 0");
        continue;
      }
      if (r->is_zero()) fail(col, "zero off-diagonal entry");
      if (r->is_negative()) fail(col, "negative entry");
      if (j < rows) {
        const auto& other = d.at(j, rows);
        if (!other.has_value() || *other != *r)
          fail(col, "asymmetric entry at (" + labels[rows] + "," + labels[j] +
                        ") vs (" + labels[j] + "," + labels[rows] + ")");
      } else {
        d.set(rows, j, *r);
      }
    }
    ++rows;
  }
  if (rows != labels.size()) fail(1, "fewer rows than labels");
  return d;
}

std::string write_matrix(const PartialDistance& d) {
  std::string out;
  for (const auto& l : d.labels()) {
    out += ',';
    out += l;
  }
  out += '\n';
  for (size_t i = 0; i < d.size(); ++i) {
    out += d.labels()[i];
    for (size_t j = 0; j < d.size(); ++j) {
      out += ',';
      const auto& e = d.at(i, j);
      out += e ? e->str_preferring_decimal() : std::string("inf");
    }
    out += '\n';
  }
  return out;
}

std::string export_dot(const ArborealNetwork& n) {
  std::map<VertexId, long long> renum;
  long long next = 1;
  for (VertexId v : n.vertices()) renum[v] = next++;
  std::string out = "digraph arboreal {\n";
  for (VertexId v : n.vertices()) {
    std::string id = "v" + std::to_string(renum[v]);
    if (n.outdegree(v) == 0)
      out += "  " + id + " [shape=box,label=\"" + *n.label(v) + "\"];\n";
    else if (n.indegree(v) == 0)
      out += "  " + id + " [shape=doublecircle,label=\"\"];\n";
    else
      out += "  " + id + " [shape=point];\n";
  }
  for (const Arc& a : n.arcs())
    out += "  v" + std::to_string(renum[a.from]) + " -> v" +
           std::to_string(renum[a.to]) + " [label=\"" +
           n.weight(a.from, a.to).str() + "\"];\n";
  out += "}\n";
  return out;
}

std::string export_dot(const UndirectedGraph& g) {
  std::map<VertexId, long long> renum;
  long long next = 1;
  for (VertexId v : g.vertices()) renum[v] = next++;
  std::string out = "graph arboreal {\n";
  for (VertexId v : g.vertices()) {
    std::string id = "v" + std::to_string(renum[v]);
    if (const std::string* l = g.label(v))
      out += "  " + id + " [shape=box,label=\"" + *l + "\"];\n";
    else
      out += "  " + id + " [shape=point];\n";
  }
  for (const Edge& e : g.edges())
    out += "  v" + std::to_string(renum[e.first]) + " -- v" +
           std::to_string(renum[e.second]) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace arboreal
