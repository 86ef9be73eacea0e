#include "tableau2d/proof_tree.hpp"

namespace tableau2d {

std::size_t ProofNode::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

std::size_t ProofNode::leaf_count() const {
  if (leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

namespace {

void render_into(const ProofNode& node, bool explain, const std::string& indent, std::string& out) {
  for (const auto& a : node.added) out += indent + a + "\n";
  if (node.leaf) {
    const ProofLeaf& l = *node.leaf;
    out += indent + (l.closed ? "closed" : "open") + "\n";
    if (l.closed && explain) {
      for (const auto& c : l.certificate) out += indent + "  " + c + "\n";
    }
    if (!l.closed) {
      for (const auto& a : l.assignment) out += indent + "  " + a + "\n";
    }
    return;
  }
  if (node.rule.empty()) return;
  out += indent + "[" + node.rule + "] " + node.premise + "\n";
  if (node.children.size() == 1) {
    render_into(node.children.front(), explain, indent, out);
    return;
  }
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    out += indent + "branch " + std::to_string(k + 1) + ":\n";
    render_into(node.children[k], explain, indent + "  ", out);
  }
}

}  // namespace

std::string render_tree(const ProofNode& root, bool explain) {
  std::string out;
  render_into(root, explain, "", out);
  return out;
}

}  // namespace tableau2d
