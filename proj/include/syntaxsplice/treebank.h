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

// Bracketed constituency trees, e.g.
//
//   (S (NP (PRP He)) (ADVP (RB never)) (VP (VBD lied)))
//
// and enumeration of the labeled word spans (constituents) they contain.

#ifndef SYNTAXSPLICE_TREEBANK_H_
#define SYNTAXSPLICE_TREEBANK_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace syntaxsplice {

// Half-open word index range [begin, end).
struct Span {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

// A tree node. Pre-terminals carry a token and no children; internal nodes
// carry one or more children and an empty token.
struct Node {
  std::string label;
  std::string token;
  std::vector<Node> children;

  bool is_preterminal() const { return children.empty(); }
  friend bool operator==(const Node&, const Node&) = default;
};

// Immutable, validated constituency tree.
class ParseTree {
 public:
  // Validates `root` (non-empty labels, leaves carry tokens, internal nodes
  // have children). Throws Error on violation.
  explicit ParseTree(Node root);

  const Node& root() const { return root_; }
  int token_count() const { return token_count_; }

  friend bool operator==(const ParseTree& a, const ParseTree& b) {
    return a.root_ == b.root_;
  }

 private:
  Node root_;
  int token_count_ = 0;
};

struct Constituent {
  std::string label;  // normalized when the policy asks for it
  Span span;
  std::vector<int> node_path;  // child indices from the root

  friend bool operator==(const Constituent&, const Constituent&) = default;
};

struct ConstituentPolicy {
  bool include_preterminals = true;
  bool exclude_full_span = true;
  int min_words = 1;
  std::optional<int> max_words;  // unbounded when empty
  std::optional<std::set<std::string>> label_allowlist;
  // Strip functional suffixes: NP-SBJ -> NP, NP=2 -> NP.
  bool normalize_labels = false;
  // Pair constituents drawn from the same utterance (distinct nodes only).
  bool allow_self_pairs = false;

  bool Accepts(std::string_view label, Span span, int token_count,
               bool preterminal) const;
  friend bool operator==(const ConstituentPolicy&,
                         const ConstituentPolicy&) = default;
};

// Parses one bracketed tree. A wrapping pair with an empty label, as in
// "( (S ...))", is stripped.
ParseTree ParseBracketed(std::string_view text);

// Inverse of ParseBracketed, single-spaced.
std::string ToBracketed(const ParseTree& tree);

std::vector<std::string> LeafTokens(const ParseTree& tree);

// Every node accepted by `policy`, in document order: spans ascend by begin,
// and for equal begins the wider (outer) node comes first.
std::vector<Constituent> EnumerateConstituents(const ParseTree& tree,
                                               const ConstituentPolicy& policy);

// "NP-SBJ-1" -> "NP", "NP=2" -> "NP". Labels that begin with '-' (-NONE-,
// -LRB-) are returned unchanged.
std::string NormalizeLabel(std::string_view label);

// Node reached by following `path` from the root. Throws kRangeOutOfBounds.
const Node& NodeAt(const ParseTree& tree, std::span<const int> path);

// Returns a copy of `host` in which the node at `host_path` is replaced by a
// copy of the node at `donor_path` in `donor`. Label agreement is the
// caller's concern.
ParseTree SubstituteSubtree(const ParseTree& host,
                            std::span<const int> host_path,
                            const ParseTree& donor,
                            std::span<const int> donor_path);

}  // namespace syntaxsplice

#endif  // SYNTAXSPLICE_TREEBANK_H_
