#include "interdag/dag.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace interdag {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::DuplicateNode: return "DuplicateNode";
    case Errc::DanglingEdge: return "DanglingEdge";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::OverlappingSets: return "OverlappingSets";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::DotSyntax: return "DotSyntax";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::InvalidQuery: return "InvalidQuery";
    case Errc::EnumerationBound: return "EnumerationBound";
    case Errc::CandidateSetTooLarge: return "CandidateSetTooLarge";
    case Errc::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::OverlappingTargets: return "OverlappingTargets";
    case Errc::IncompleteSpec: return "IncompleteSpec";
    case Errc::PositivityViolation: return "PositivityViolation";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Observed: return "observed";
    case NodeKind::Latent: return "latent";
    case NodeKind::Deterministic: return "deterministic";
  }
  return "observed";
}

bool Dag::has_node(const std::string& name) const { return index_of(name) >= 0; }

int Dag::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return -1;
  return static_cast<int>(it - names_.begin());
}

int Dag::require(const std::string& name) const {
  int id = index_of(name);
  if (id < 0) throw Error(Errc::UnknownNode, "unknown node: " + name);
  return id;
}

NodeKind Dag::kind(const std::string& name) const {
  return kinds_[static_cast<std::size_t>(require(name))];
}

bool Dag::has_edge(const std::string& parent, const std::string& child) const {
  int p = index_of(parent);
  int c = index_of(child);
  if (p < 0 || c < 0) return false;
  const auto& kids = children_[static_cast<std::size_t>(p)];
  return std::binary_search(kids.begin(), kids.end(), c);
}

std::vector<Edge> Dag::edge_list() const {
  std::vector<Edge> edges;
  edges.reserve(edge_count_);
  for (std::size_t p = 0; p < names_.size(); ++p) {
    for (int c : children_[p]) edges.emplace_back(names_[p], names_[static_cast<std::size_t>(c)]);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<std::string> Dag::parents(const std::string& name) const {
  std::vector<std::string> out;
  for (int p : parents_[static_cast<std::size_t>(require(name))]) out.push_back(names_[static_cast<std::size_t>(p)]);
  return out;
}

std::vector<std::string> Dag::children(const std::string& name) const {
  std::vector<std::string> out;
  for (int c : children_[static_cast<std::size_t>(require(name))]) out.push_back(names_[static_cast<std::size_t>(c)]);
  return out;
}

bool Dag::operator==(const Dag& other) const {
  return names_ == other.names_ && kinds_ == other.kinds_ && children_ == other.children_;
}

namespace {

// Returns one directed cycle as "a -> b -> ... -> a", or empty if acyclic.
std::string find_cycle(const std::vector<std::vector<int>>& children, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<int> stack, trail;

  for (int root = 0; root < n; ++root) {
    if (state[static_cast<std::size_t>(root)] != 0) continue;
    // Iterative DFS keeping the current trail.
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    state[static_cast<std::size_t>(root)] = 1;
    trail = {root};
    while (!frames.empty()) {
      auto& [node, next] = frames.back();
      const auto& kids = children[static_cast<std::size_t>(node)];
      if (next < kids.size()) {
        int kid = kids[next++];
        if (state[static_cast<std::size_t>(kid)] == 1) {
          std::ostringstream os;
          auto it = std::find(trail.begin(), trail.end(), kid);
          for (; it != trail.end(); ++it) os << names[static_cast<std::size_t>(*it)] << " -> ";
          os << names[static_cast<std::size_t>(kid)];
          return os.str();
        }
        if (state[static_cast<std::size_t>(kid)] == 0) {
          state[static_cast<std::size_t>(kid)] = 1;
          frames.emplace_back(kid, 0);
          trail.push_back(kid);
        }
      } else {
        state[static_cast<std::size_t>(node)] = 2;
        frames.pop_back();
        trail.pop_back();
      }
    }
  }
  return {};
}

}  // namespace

Dag build_dag(const std::vector<std::pair<std::string, NodeKind>>& nodes,
              const std::vector<Edge>& edges) {
  Dag dag;
  for (const auto& [name, kind] : nodes) {
    if (name.empty()) throw Error(Errc::InvalidSpec, "empty node name");
    dag.names_.push_back(name);
  }
  std::sort(dag.names_.begin(), dag.names_.end());
  for (std::size_t i = 1; i < dag.names_.size(); ++i) {
    if (dag.names_[i] == dag.names_[i - 1])
      throw Error(Errc::DuplicateNode, "duplicate node: " + dag.names_[i]);
  }
  dag.kinds_.resize(dag.names_.size(), NodeKind::Observed);
  for (const auto& [name, kind] : nodes) dag.kinds_[static_cast<std::size_t>(dag.index_of(name))] = kind;

  dag.parents_.assign(dag.names_.size(), {});
  dag.children_.assign(dag.names_.size(), {});
  for (const auto& [from, to] : edges) {
    int p = dag.index_of(from);
    int c = dag.index_of(to);
    if (p < 0) throw Error(Errc::DanglingEdge, "edge endpoint not declared: " + from);
    if (c < 0) throw Error(Errc::DanglingEdge, "edge endpoint not declared: " + to);
    if (p == c) throw Error(Errc::CycleDetected, "self-loop at " + from);
    dag.children_[static_cast<std::size_t>(p)].push_back(c);
    dag.parents_[static_cast<std::size_t>(c)].push_back(p);
  }
  for (auto& v : dag.children_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : dag.parents_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  dag.edge_count_ = 0;
  for (const auto& v : dag.children_) dag.edge_count_ += v.size();

  std::string cycle = find_cycle(dag.children_, dag.names_);
  if (!cycle.empty()) throw Error(Errc::CycleDetected, "cycle: " + cycle);

  for (std::size_t i = 0; i < dag.names_.size(); ++i) {
    if (dag.kinds_[i] == NodeKind::Deterministic && dag.parents_[i].empty())
      throw Error(Errc::InvalidSpec, "deterministic node without parents: " + dag.names_[i]);
  }
  return dag;
}

namespace {

std::vector<int> to_ids(const Dag& dag, const NodeSet& set) {
  std::vector<int> ids;
  ids.reserve(set.size());
  for (const auto& name : set) ids.push_back(dag.require(name));
  return ids;
}

// Transitive closure along the given adjacency, excluding the seeds.
std::vector<bool> closure(const Dag& dag, const std::vector<int>& seeds, bool downward) {
  std::vector<bool> seen(dag.node_count(), false);
  std::deque<int> queue(seeds.begin(), seeds.end());
  std::vector<bool> in_seed(dag.node_count(), false);
  for (int s : seeds) in_seed[static_cast<std::size_t>(s)] = true;
  std::vector<bool> visited(dag.node_count(), false);
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    const auto& next = downward ? dag.child_ids(node) : dag.parent_ids(node);
    for (int m : next) {
      if (!visited[static_cast<std::size_t>(m)]) {
        visited[static_cast<std::size_t>(m)] = true;
        seen[static_cast<std::size_t>(m)] = true;
        queue.push_back(m);
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (in_seed[i]) seen[i] = false;
  return seen;
}

}  // namespace

NodeSet relatives(const Dag& dag, const NodeSet& seed, Relation relation) {
  std::vector<int> ids = to_ids(dag, seed);
  NodeSet out;
  switch (relation) {
    case Relation::Parents:
      for (int id : ids)
        for (int p : dag.parent_ids(id)) out.insert(dag.name_of(p));
      break;
    case Relation::Children:
      for (int id : ids)
        for (int c : dag.child_ids(id)) out.insert(dag.name_of(c));
      break;
    case Relation::Ancestors: {
      auto seen = closure(dag, ids, /*downward=*/false);
      for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.insert(dag.name_of(static_cast<int>(i)));
      break;
    }
    case Relation::Descendants: {
      auto seen = closure(dag, ids, /*downward=*/true);
      for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.insert(dag.name_of(static_cast<int>(i)));
      break;
    }
  }
  return out;
}

std::string format_path(const Path& path) {
  std::ostringstream os;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    if (i > 0) os << (path.steps[i - 1] == Step::Forward ? " -> " : " <- ");
    os << path.nodes[i];
  }
  return os.str();
}

std::vector<Path> enumerate_paths(const Dag& dag, const std::string& x, const std::string& y,
                                  std::size_t max_nodes) {
  if (x == y) throw Error(Errc::InvalidQuery, "path endpoints must differ");
  int from = dag.require(x);
  int to = dag.require(y);
  if (dag.node_count() > max_nodes)
    throw Error(Errc::EnumerationBound,
                "path enumeration limited to " + std::to_string(max_nodes) + " nodes; graph has " +
                    std::to_string(dag.node_count()));

  std::vector<Path> result;
  std::vector<int> nodes{from};
  std::vector<Step> steps;
  std::vector<bool> on_path(dag.node_count(), false);
  on_path[static_cast<std::size_t>(from)] = true;

  // Neighbors in name order so full node sequences come out lexicographic.
  auto neighbors = [&dag](int node) {
    std::vector<std::pair<int, Step>> out;
    for (int c : dag.child_ids(node)) out.emplace_back(c, Step::Forward);
    for (int p : dag.parent_ids(node)) out.emplace_back(p, Step::Backward);
    std::sort(out.begin(), out.end(), [&dag](const auto& a, const auto& b) {
      return dag.name_of(a.first) < dag.name_of(b.first);
    });
    return out;
  };

  struct Frame {
    std::vector<std::pair<int, Step>> options;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{neighbors(from), 0}};
  while (!stack.empty()) {
    Frame& frame = stack.back();
    if (frame.next >= frame.options.size()) {
      stack.pop_back();
      on_path[static_cast<std::size_t>(nodes.back())] = false;
      nodes.pop_back();
      if (!steps.empty()) steps.pop_back();
      continue;
    }
    auto [node, step] = frame.options[frame.next++];
    if (on_path[static_cast<std::size_t>(node)]) continue;
    nodes.push_back(node);
    steps.push_back(step);
    if (node == to) {
      Path path;
      for (int id : nodes) path.nodes.push_back(dag.name_of(id));
      path.steps = steps;
      result.push_back(std::move(path));
      nodes.pop_back();
      steps.pop_back();
      continue;
    }
    on_path[static_cast<std::size_t>(node)] = true;
    stack.push_back({neighbors(node), 0});
  }
  return result;
}

bool path_blocked(const Dag& dag, const Path& path, const NodeSet& z) {
  if (path.nodes.size() < 2 || path.steps.size() != path.nodes.size() - 1)
    throw Error(Errc::InvalidPath, "path must have >= 2 nodes and aligned steps");
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    const auto& a = path.nodes[i];
    const auto& b = path.nodes[i + 1];
    bool ok = path.steps[i] == Step::Forward ? dag.has_edge(a, b) : dag.has_edge(b, a);
    if (!ok) throw Error(Errc::InvalidPath, "path step not an edge: " + a + " / " + b);
  }
  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
    if (std::count(path.nodes.begin(), path.nodes.end(), path.nodes[i]) > 1)
      throw Error(Errc::InvalidPath, "repeated node on path: " + path.nodes[i]);
  }

  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
    bool collider = path.steps[i - 1] == Step::Forward && path.steps[i] == Step::Backward;
    const std::string& node = path.nodes[i];
    if (!collider) {
      if (z.count(node)) return true;
    } else {
      if (z.count(node)) continue;
      NodeSet desc = relatives(dag, {node}, Relation::Descendants);
      bool opened = false;
      for (const auto& d : desc)
        if (z.count(d)) { opened = true; break; }
      if (!opened) return true;
    }
  }
  return false;
}

bool d_separated(const Dag& dag, const NodeSet& x, const NodeSet& y, const NodeSet& z) {
  for (const auto& n : x)
    if (y.count(n) || z.count(n)) throw Error(Errc::OverlappingSets, "sets overlap at " + n);
  for (const auto& n : y)
    if (z.count(n)) throw Error(Errc::OverlappingSets, "sets overlap at " + n);

  std::vector<int> xs = to_ids(dag, x);
  std::vector<int> ys = to_ids(dag, y);
  std::vector<int> zs = to_ids(dag, z);
  if (xs.empty() || ys.empty()) return true;

  std::vector<bool> in_z(dag.node_count(), false);
  for (int id : zs) in_z[static_cast<std::size_t>(id)] = true;
  // z together with its ancestors: the nodes at which a collider is open.
  std::vector<bool> z_or_anc(dag.node_count(), false);
  {
    std::deque<int> queue(zs.begin(), zs.end());
    for (int id : zs) z_or_anc[static_cast<std::size_t>(id)] = true;
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      for (int p : dag.parent_ids(node)) {
        if (!z_or_anc[static_cast<std::size_t>(p)]) {
          z_or_anc[static_cast<std::size_t>(p)] = true;
          queue.push_back(p);
        }
      }
    }
  }

  std::vector<bool> in_y(dag.node_count(), false);
  for (int id : ys) in_y[static_cast<std::size_t>(id)] = true;

  // Ball passing over (node, arrival direction) states.
  enum { kUp = 0, kDown = 1 };
  std::vector<std::array<bool, 2>> seen(dag.node_count(), {false, false});
  std::deque<std::pair<int, int>> queue;
  for (int id : xs) queue.emplace_back(id, kUp);
  while (!queue.empty()) {
    auto [node, dir] = queue.front();
    queue.pop_front();
    if (seen[static_cast<std::size_t>(node)][static_cast<std::size_t>(dir)]) continue;
    seen[static_cast<std::size_t>(node)][static_cast<std::size_t>(dir)] = true;
    if (in_y[static_cast<std::size_t>(node)]) return false;

    bool observed = in_z[static_cast<std::size_t>(node)];
    if (dir == kUp) {
      if (!observed) {
        for (int p : dag.parent_ids(node)) queue.emplace_back(p, kUp);
        for (int c : dag.child_ids(node)) queue.emplace_back(c, kDown);
      }
    } else {
      if (!observed)
        for (int c : dag.child_ids(node)) queue.emplace_back(c, kDown);
      if (z_or_anc[static_cast<std::size_t>(node)])
        for (int p : dag.parent_ids(node)) queue.emplace_back(p, kUp);
    }
  }
  return true;
}

std::vector<Path> backdoor_paths(const Dag& dag, const std::string& a, const std::string& y,
                                 std::size_t max_nodes) {
  std::vector<Path> all = enumerate_paths(dag, a, y, max_nodes);
  std::vector<Path> out;
  for (auto& path : all)
    if (path.steps.front() == Step::Backward) out.push_back(std::move(path));
  return out;
}

// ---------------------------------------------------------------------------
// DOT subset

namespace {

struct DotToken {
  enum Kind { Id, Arrow, LBrace, RBrace, LBracket, RBracket, Equals, Semi, End } kind;
  std::string text;
  int line;
  int col;
};

class DotLexer {
 public:
  explicit DotLexer(const std::string& text) : text_(text) {}

  DotToken next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {DotToken::End, "", line, col};
    char ch = text_[pos_];
    if (ch == '{') { advance(); return {DotToken::LBrace, "{", line, col}; }
    if (ch == '}') { advance(); return {DotToken::RBrace, "}", line, col}; }
    if (ch == '[') { advance(); return {DotToken::LBracket, "[", line, col}; }
    if (ch == ']') { advance(); return {DotToken::RBracket, "]", line, col}; }
    if (ch == '=') { advance(); return {DotToken::Equals, "=", line, col}; }
    if (ch == ';') { advance(); return {DotToken::Semi, ";", line, col}; }
    if (ch == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        advance();
        advance();
        return {DotToken::Arrow, "->", line, col};
      }
      fail("expected '->'", line, col);
    }
    if (ch == '"') {
      advance();
      std::string id;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') fail("unterminated quoted id", line, col);
        id.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) fail("unterminated quoted id", line, col);
      advance();  // closing quote
      if (id.empty()) fail("empty quoted id", line, col);
      return {DotToken::Id, id, line, col};
    }
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id.push_back(text_[pos_]);
        advance();
      }
      return {DotToken::Id, id, line, col};
    }
    fail(std::string("unexpected character '") + ch + "'", line, col);
    return {};
  }

  [[noreturn]] static void fail(const std::string& msg, int line, int col) {
    throw Error(Errc::DotSyntax,
                "DOT syntax error at line " + std::to_string(line) + ", column " +
                    std::to_string(col) + ": " + msg);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        advance();
      } else if (ch == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool plain_dot_id(const std::string& id) {
  if (id.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(id[0]))) return false;
  for (char ch : id)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

std::string quote_dot_id(const std::string& id) {
  if (plain_dot_id(id)) return id;
  return "\"" + id + "\"";
}

}  // namespace

Dag parse_dot(const std::string& text) {
  DotLexer lexer(text);
  DotToken tok = lexer.next();
  if (tok.kind != DotToken::Id || tok.text != "digraph")
    DotLexer::fail("expected 'digraph'", tok.line, tok.col);
  tok = lexer.next();
  if (tok.kind == DotToken::Id) tok = lexer.next();  // optional graph name
  if (tok.kind != DotToken::LBrace) DotLexer::fail("expected '{'", tok.line, tok.col);

  std::map<std::string, NodeKind> nodes;
  std::vector<Edge> edges;

  tok = lexer.next();
  while (tok.kind != DotToken::RBrace) {
    if (tok.kind == DotToken::Semi) {
      tok = lexer.next();
      continue;
    }
    if (tok.kind != DotToken::Id) DotLexer::fail("expected node id", tok.line, tok.col);
    std::string head = tok.text;
    nodes.emplace(head, NodeKind::Observed);
    tok = lexer.next();
    if (tok.kind == DotToken::Arrow) {
      while (tok.kind == DotToken::Arrow) {
        tok = lexer.next();
        if (tok.kind != DotToken::Id) DotLexer::fail("expected node id after '->'", tok.line, tok.col);
        nodes.emplace(tok.text, NodeKind::Observed);
        edges.emplace_back(head, tok.text);
        head = tok.text;
        tok = lexer.next();
      }
    } else if (tok.kind == DotToken::LBracket) {
      tok = lexer.next();
      if (tok.kind != DotToken::Id || tok.text != "kind")
        DotLexer::fail("only the 'kind' attribute is supported", tok.line, tok.col);
      tok = lexer.next();
      if (tok.kind != DotToken::Equals) DotLexer::fail("expected '='", tok.line, tok.col);
      tok = lexer.next();
      if (tok.kind != DotToken::Id) DotLexer::fail("expected attribute value", tok.line, tok.col);
      if (tok.text == "latent") {
        nodes[head] = NodeKind::Latent;
      } else if (tok.text == "deterministic") {
        nodes[head] = NodeKind::Deterministic;
      } else if (tok.text == "observed") {
        nodes[head] = NodeKind::Observed;
      } else {
        DotLexer::fail("kind must be observed, latent or deterministic", tok.line, tok.col);
      }
      tok = lexer.next();
      if (tok.kind != DotToken::RBracket) DotLexer::fail("expected ']'", tok.line, tok.col);
      tok = lexer.next();
    }
  }
  tok = lexer.next();
  if (tok.kind != DotToken::End) DotLexer::fail("trailing text after '}'", tok.line, tok.col);

  std::vector<std::pair<std::string, NodeKind>> node_list(nodes.begin(), nodes.end());
  return build_dag(node_list, edges);
}

std::string to_dot(const Dag& dag) {
  std::ostringstream os;
  os << "digraph {\n";
  for (const auto& name : dag.node_names()) {
    os << "  " << quote_dot_id(name);
    NodeKind kind = dag.kind(name);
    if (kind != NodeKind::Observed) os << " [kind=" << node_kind_name(kind) << "]";
    os << ";\n";
  }
  for (const auto& [from, to] : dag.edge_list())
    os << "  " << quote_dot_id(from) << " -> " << quote_dot_id(to) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace interdag
