// Copyright 2026 The SyntaxSplice Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "syntaxsplice/treebank.h"

#include <cctype>
#include <utility>

#include "syntaxsplice/error.h"

namespace syntaxsplice {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool ValidLabel(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (IsSpace(c) || c == '(' || c == ')') return false;
  }
  return true;
}

// Returns the number of leaves under `node`.
int ValidateNode(const Node& node) {
  if (!ValidLabel(node.label)) {
    throw Error(ErrorCode::kEmptyLabel,
                "node label '" + node.label + "' is empty or malformed");
  }
  if (node.children.empty()) {
    if (!ValidLabel(node.token)) {
      throw Error(ErrorCode::kMalformedTree,
                  "pre-terminal " + node.label + " has no valid token");
    }
    return 1;
  }
  if (!node.token.empty()) {
    throw Error(ErrorCode::kMalformedTree,
                "node " + node.label + " has both a token and children");
  }
  int leaves = 0;
  for (const Node& child : node.children) leaves += ValidateNode(child);
  return leaves;
}

// Bracket scanner. Builds nodes with an explicit stack so that nesting depth
// is bounded by memory, not the call stack.
class BracketParser {
 public:
  explicit BracketParser(std::string_view text) : text_(text) {}

  Node Parse() {
    SkipSpace();
    if (pos_ == text_.size()) throw Error(ErrorCode::kEmptyTree, "no tree");
    if (text_[pos_] != '(') {
      if (text_[pos_] == ')') Fail(ErrorCode::kUnbalancedBrackets, "stray ')'");
      Fail(ErrorCode::kMalformedTree, "expected '('");
    }

    std::vector<Frame> stack;
    std::optional<Node> result;
    while (!result) {
      SkipSpace();
      if (pos_ == text_.size()) {
        throw Error(ErrorCode::kUnbalancedBrackets,
                    std::to_string(stack.size()) + " unclosed '('");
      }
      const char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        if (!stack.empty() && !stack.back().node.token.empty()) {
          Fail(ErrorCode::kMalformedTree, "child after token");
        }
        Frame frame;
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
          frame.node.label = std::string(ReadAtom());
        }
        stack.push_back(std::move(frame));
      } else if (c == ')') {
        if (stack.empty()) Fail(ErrorCode::kUnbalancedBrackets, "stray ')'");
        ++pos_;
        Node node = Close(std::move(stack.back()), stack.size() == 1);
        stack.pop_back();
        if (stack.empty()) {
          result = std::move(node);
        } else {
          stack.back().node.children.push_back(std::move(node));
        }
      } else {
        if (stack.empty()) Fail(ErrorCode::kMalformedTree, "token outside node");
        std::string_view atom = ReadAtom();
        Node& node = stack.back().node;
        if (!node.children.empty() || !node.token.empty()) {
          Fail(ErrorCode::kMalformedTree,
               "unexpected token '" + std::string(atom) + "'");
        }
        node.token = std::string(atom);
      }
    }

    SkipSpace();
    if (pos_ != text_.size()) {
      Fail(ErrorCode::kTrailingGarbage, "content after root");
    }
    return std::move(*result);
  }

 private:
  struct Frame {
    Node node;
  };

  Node Close(Frame frame, bool outermost) {
    Node& node = frame.node;
    if (node.label.empty()) {
      // "( (S ...))": empty-label wrapper around a single tree.
      if (outermost && node.token.empty() && node.children.size() == 1) {
        return std::move(node.children.front());
      }
      if (outermost && node.token.empty() && node.children.empty()) {
        Fail(ErrorCode::kEmptyTree, "empty tree");
      }
      Fail(ErrorCode::kEmptyLabel, "node without label");
    }
    if (node.children.empty() && node.token.empty()) {
      if (outermost) Fail(ErrorCode::kEmptyTree, "tree has no tokens");
      Fail(ErrorCode::kMalformedTree, "node " + node.label + " is empty");
    }
    return std::move(node);
  }

  std::string_view ReadAtom() {
    const size_t start = pos_;
    while (pos_ < text_.size() && !IsSpace(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  [[noreturn]] void Fail(ErrorCode code, const std::string& what) const {
    throw Error(code, what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void AppendBracketed(const Node& node, std::string* out) {
  out->push_back('(');
  out->append(node.label);
  if (node.is_preterminal()) {
    out->push_back(' ');
    out->append(node.token);
  } else {
    for (const Node& child : node.children) {
      out->push_back(' ');
      AppendBracketed(child, out);
    }
  }
  out->push_back(')');
}

void CollectLeaves(const Node& node, std::vector<std::string>* out) {
  if (node.is_preterminal()) {
    out->push_back(node.token);
    return;
  }
  for (const Node& child : node.children) CollectLeaves(child, out);
}

// Pre-order walk; `position` is the index of the next leaf.
void CollectConstituents(const Node& node, const ConstituentPolicy& policy,
                         int token_count, int* position,
                         std::vector<int>* path,
                         std::vector<Constituent>* out) {
  const int begin = *position;
  // Reserve the slot so the parent precedes its descendants.
  const size_t slot = out->size();
  out->emplace_back();

  if (node.is_preterminal()) {
    ++*position;
  } else {
    for (size_t i = 0; i < node.children.size(); ++i) {
      path->push_back(static_cast<int>(i));
      CollectConstituents(node.children[i], policy, token_count, position,
                          path, out);
      path->pop_back();
    }
  }

  const Span span{begin, *position};
  std::string label =
      policy.normalize_labels ? NormalizeLabel(node.label) : node.label;
  if (policy.Accepts(label, span, token_count, node.is_preterminal())) {
    (*out)[slot] = Constituent{std::move(label), span, *path};
  } else {
    (*out)[slot].span = Span{-1, -1};
  }
}

Node* MutableNodeAt(Node* root, std::span<const int> path) {
  Node* node = root;
  for (int index : path) {
    if (index < 0 || static_cast<size_t>(index) >= node->children.size()) {
      throw Error(ErrorCode::kRangeOutOfBounds, "node path out of range");
    }
    node = &node->children[index];
  }
  return node;
}

}  // namespace

ParseTree::ParseTree(Node root) : root_(std::move(root)) {
  token_count_ = ValidateNode(root_);
}

bool ConstituentPolicy::Accepts(std::string_view label, Span span,
                                int token_count, bool preterminal) const {
  if (preterminal && !include_preterminals) return false;
  if (exclude_full_span && span.begin == 0 && span.end == token_count) {
    return false;
  }
  const int words = span.size();
  if (words < min_words) return false;
  if (max_words && words > *max_words) return false;
  if (label_allowlist && !label_allowlist->contains(std::string(label))) {
    return false;
  }
  return true;
}

ParseTree ParseBracketed(std::string_view text) {
  return ParseTree(BracketParser(text).Parse());
}

std::string ToBracketed(const ParseTree& tree) {
  std::string out;
  AppendBracketed(tree.root(), &out);
  return out;
}

std::vector<std::string> LeafTokens(const ParseTree& tree) {
  std::vector<std::string> tokens;
  tokens.reserve(tree.token_count());
  CollectLeaves(tree.root(), &tokens);
  return tokens;
}

std::vector<Constituent> EnumerateConstituents(
    const ParseTree& tree, const ConstituentPolicy& policy) {
  std::vector<Constituent> all;
  std::vector<int> path;
  int position = 0;
  CollectConstituents(tree.root(), policy, tree.token_count(), &position,
                      &path, &all);
  std::vector<Constituent> accepted;
  for (Constituent& c : all) {
    if (c.span.begin >= 0) accepted.push_back(std::move(c));
  }
  return accepted;
}

std::string NormalizeLabel(std::string_view label) {
  if (label.empty() || label.front() == '-') return std::string(label);
  const size_t cut = label.find_first_of("-=");
  return std::string(label.substr(0, cut));
}

const Node& NodeAt(const ParseTree& tree, std::span<const int> path) {
  const Node* node = &tree.root();
  for (int index : path) {
    if (index < 0 || static_cast<size_t>(index) >= node->children.size()) {
      throw Error(ErrorCode::kRangeOutOfBounds, "node path out of range");
    }
    node = &node->children[index];
  }
  return *node;
}

ParseTree SubstituteSubtree(const ParseTree& host,
                            std::span<const int> host_path,
                            const ParseTree& donor,
                            std::span<const int> donor_path) {
  Node root = host.root();
  *MutableNodeAt(&root, host_path) = NodeAt(donor, donor_path);
  return ParseTree(std::move(root));
}

}  // namespace syntaxsplice
