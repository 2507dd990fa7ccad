// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

// Arithmetic expressions over named ciphertext vectors.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := IDENT | INT | '(' expr ')'
//
// Chains of + and * are flattened and lowered to balanced trees, so a product
// of k factors costs ceil(log2 k) multiplicative levels.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hefv/bigint.hpp"
#include "hefv/collections.hpp"

namespace hefv::expr {

struct Node {
  enum class Kind { identifier, literal, sum, product };

  Kind kind = Kind::literal;
  std::size_t position = 0;  // offset of the first character in the source
  std::string name;          // identifier
  BigInt value;              // literal
  // sum: children with their signs (true = subtracted); product: children.
  std::vector<Node> children;
  std::vector<bool> negated;
};

// Throws ParseError carrying the offending character offset.
Node parse(std::string_view source);

// Multiplicative depth after balanced lowering.
unsigned depth(const Node& node);

std::set<std::string> identifiers(const Node& node);

struct Environment {
  std::map<std::string, CipherVector> vectors;  // all of one length and one parameter set
  const PublicKey* pk = nullptr;                // needed only when the expression has literals
  const RelinKey* rk = nullptr;                 // needed only when it multiplies
  RandomSource* rng = nullptr;                  // randomness for literal encryptions
};

// Elementwise evaluation over the bound vectors. Literals are encrypted once
// under pk and broadcast. Throws unbound_identifier for a missing name or a
// literal without pk.
CipherVector evaluate(const Node& node, const Environment& env, Exec exec = Exec::parallel);

}  // namespace hefv::expr
