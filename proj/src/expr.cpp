// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/expr.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "hefv/encoding.hpp"
#include "hefv/error.hpp"

namespace hefv::expr {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Node parse_all() {
    Node n = expression();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw ParseError(pos_, what); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Node expression() {
    Node first = term();
    if (peek() != '+' && peek() != '-') return first;
    Node sum;
    sum.kind = Node::Kind::sum;
    sum.position = first.position;
    sum.children.push_back(std::move(first));
    sum.negated.push_back(false);
    while (peek() == '+' || peek() == '-') {
      const bool minus = src_[pos_++] == '-';
      sum.children.push_back(term());
      sum.negated.push_back(minus);
    }
    return sum;
  }

  Node term() {
    Node first = factor();
    if (peek() != '*') return first;
    Node prod;
    prod.kind = Node::Kind::product;
    prod.position = first.position;
    prod.children.push_back(std::move(first));
    while (peek() == '*') {
      ++pos_;
      prod.children.push_back(factor());
    }
    return prod;
  }

  Node factor() {
    const char c = peek();
    Node n;
    n.position = pos_;
    if (c == '(') {
      ++pos_;
      n = expression();
      if (peek() != ')') fail(pos_ < src_.size() ? "expected ')'" : "missing ')' at end of input");
      ++pos_;
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      n.kind = Node::Kind::literal;
      n.value = BigInt(std::string(src_.substr(start, pos_ - start)), 10);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      n.kind = Node::Kind::identifier;
      n.name = std::string(src_.substr(start, pos_ - start));
      return n;
    }
    if (c == '\0') fail("expected an operand but the input ended");
    fail("expected an operand, found '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Pairs neighbours level by level; an odd element is carried to the next level.
template <typename T, typename Combine>
T balanced(std::vector<T> level, Combine combine) {
  while (level.size() > 1) {
    std::vector<T> next;
    next.reserve(level.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(combine(level[i], level[i + 1]));
    if (level.size() % 2) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level.front());
}

void collect(const Node& n, std::set<std::string>& out) {
  if (n.kind == Node::Kind::identifier) out.insert(n.name);
  for (const auto& c : n.children) collect(c, out);
}

void collect_literals(const Node& n, std::vector<const Node*>& out) {
  if (n.kind == Node::Kind::literal) out.push_back(&n);
  for (const auto& c : n.children) collect_literals(c, out);
}

class Evaluator {
 public:
  Evaluator(const Environment& env, std::map<const Node*, Ciphertext> literals, std::size_t index)
      : env_(env), literals_(std::move(literals)), index_(index) {}

  Ciphertext eval(const Node& n) const {
    switch (n.kind) {
      case Node::Kind::identifier:
        return env_.vectors.at(n.name)[index_];
      case Node::Kind::literal:
        return literals_.at(&n);
      case Node::Kind::sum: {
        std::vector<Ciphertext> plus, minus;
        for (std::size_t i = 0; i < n.children.size(); ++i)
          (n.negated[i] ? minus : plus).push_back(eval(n.children[i]));
        auto add = [](const Ciphertext& a, const Ciphertext& b) { return he_add(a, b); };
        if (plus.empty()) return he_neg(balanced(std::move(minus), add));
        Ciphertext pos = balanced(std::move(plus), add);
        if (minus.empty()) return pos;
        return he_sub(pos, balanced(std::move(minus), add));
      }
      case Node::Kind::product: {
        std::vector<Ciphertext> factors;
        for (const auto& c : n.children) factors.push_back(eval(c));
        return balanced(std::move(factors),
                        [this](const Ciphertext& a, const Ciphertext& b) { return he_mul(a, b, *env_.rk); });
      }
    }
    throw Error(Errc::invalid_parameter, "malformed expression node");
  }

 private:
  const Environment& env_;
  std::map<const Node*, Ciphertext> literals_;
  std::size_t index_;
};

bool has_product(const Node& n) {
  if (n.kind == Node::Kind::product) return true;
  return std::any_of(n.children.begin(), n.children.end(), has_product);
}

}  // namespace

Node parse(std::string_view source) { return Parser(source).parse_all(); }

unsigned depth(const Node& node) {
  switch (node.kind) {
    case Node::Kind::identifier:
    case Node::Kind::literal:
      return 0;
    case Node::Kind::sum: {
      unsigned d = 0;
      for (const auto& c : node.children) d = std::max(d, depth(c));
      return d;
    }
    case Node::Kind::product: {
      std::vector<unsigned> ds;
      for (const auto& c : node.children) ds.push_back(depth(c));
      return balanced(std::move(ds), [](unsigned a, unsigned b) { return std::max(a, b) + 1; });
    }
  }
  return 0;
}

std::set<std::string> identifiers(const Node& node) {
  std::set<std::string> out;
  collect(node, out);
  return out;
}

CipherVector evaluate(const Node& node, const Environment& env, Exec exec) {
  const std::optional<ParamSet> from_pk = env.pk ? std::optional<ParamSet>(env.pk->params()) : std::nullopt;
  std::optional<ParamSet> params;
  std::optional<std::size_t> length;
  for (const auto& name : identifiers(node)) {
    auto it = env.vectors.find(name);
    if (it == env.vectors.end()) throw Error(Errc::unbound_identifier, "identifier '" + name + "' is not bound");
    if (params && !(*params == it->second.params()))
      throw Error(Errc::parameter_mismatch, "bound vectors use different parameters");
    if (length && *length != it->second.size())
      throw Error(Errc::length_mismatch, "bound vectors have different lengths");
    params = it->second.params();
    length = it->second.size();
  }
  // A literal-only expression broadcasts to the length of the bound vectors.
  if (!length && !env.vectors.empty()) length = env.vectors.begin()->second.size();

  std::vector<const Node*> lits;
  collect_literals(node, lits);
  std::map<const Node*, Ciphertext> literals;
  if (!lits.empty()) {
    if (!env.pk)
      throw Error(Errc::unbound_identifier, "literal " + to_string(lits.front()->value) +
                                                " needs a public key to be encrypted");
    if (params && !(*params == *from_pk))
      throw Error(Errc::parameter_mismatch, "public key and bound vectors use different parameters");
    params = from_pk;
    std::optional<RandomSource> own;
    RandomSource* rng = env.rng;
    if (!rng) rng = &own.emplace(RandomSource::cryptographic());
    for (const Node* lit : lits) literals.emplace(lit, encrypt(*env.pk, encode_int(lit->value, *params), *rng));
  }
  if (!params) throw Error(Errc::unbound_identifier, "expression has no operands");
  if (has_product(node) && !env.rk)
    throw Error(Errc::invalid_parameter, "expression multiplies ciphertexts but no relinearisation key was given");
  if (env.rk && has_product(node) && !(env.rk->params() == *params))
    throw Error(Errc::parameter_mismatch, "relinearisation key uses different parameters");

  const std::size_t count = length.value_or(1);
  std::vector<std::optional<Ciphertext>> out(count);
  for_each_index(count, exec, [&](std::size_t i) { out[i].emplace(Evaluator(env, literals, i).eval(node)); });
  std::vector<Ciphertext> elems;
  elems.reserve(count);
  for (auto& c : out) elems.push_back(std::move(*c));
  return CipherVector(*params, std::move(elems));
}

}  // namespace hefv::expr
