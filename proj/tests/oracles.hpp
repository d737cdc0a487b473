#pragma once

// Hand-built descriptions and independent brute-force oracles used by the
// test suite. Everything here is deliberately first-principles: descriptions
// are written out longhand and the oracles use plain host data structures,
// so they cannot share bugs with the engine paths under test.

#include <optional>
#include <string>
#include <vector>

#include "orn/core.hpp"

namespace oracle {

using orn::Desc;
using orn::DescFun;
using orn::SetCode;
using orn::Value;

// ---- unary naturals ------------------------------------------------------

inline DescFun natDesc() {
  DescFun d;
  d.name = "Nat";
  d.indexSet = SetCode::unitSet();
  d.at = [](const Value&) {
    return Desc::sigma(SetCode::enumSet({"zero", "suc"}), [](const Value& t) {
      return t.tagName() == "zero" ? Desc::one() : Desc::var(Value::unit());
    });
  };
  return d;
}

inline SetCode natSet() { return SetCode::mu(natDesc(), Value::unit()); }

inline Value nat(int k) {
  Value v = Value::in(Value::pair(Value::tag("zero"), Value::unit()));
  for (int i = 0; i < k; ++i) v = Value::in(Value::pair(Value::tag("suc"), v));
  return v;
}

inline int natOf(const Value& v) {
  int k = 0;
  Value cur = v;
  while (cur.payload().first().tagName() == "suc") {
    cur = cur.payload().second();
    ++k;
  }
  return k;
}

// ---- booleans --------------------------------------------------------------

inline DescFun boolDesc() {
  DescFun d;
  d.name = "Bool";
  d.indexSet = SetCode::unitSet();
  d.at = [](const Value&) {
    return Desc::sigma(SetCode::enumSet({"true", "false"}),
                       [](const Value&) { return Desc::one(); });
  };
  return d;
}

inline SetCode boolSet() { return SetCode::mu(boolDesc(), Value::unit()); }

inline Value boolVal(bool b) {
  return Value::in(Value::pair(Value::tag(b ? "true" : "false"), Value::unit()));
}

inline bool boolOf(const Value& v) { return v.payload().first().tagName() == "true"; }

// ---- lists over a tag alphabet ---------------------------------------------

inline DescFun listDesc(std::vector<std::string> alphabet) {
  SetCode elem = SetCode::enumSet(std::move(alphabet));
  DescFun d;
  d.name = "List";
  d.indexSet = SetCode::unitSet();
  d.at = [elem](const Value&) {
    return Desc::sigma(SetCode::enumSet({"nil", "cons"}), [elem](const Value& t) {
      if (t.tagName() == "nil") return Desc::one();
      return Desc::sigma(elem, [](const Value&) { return Desc::var(Value::unit()); });
    });
  };
  return d;
}

inline SetCode listSet(std::vector<std::string> alphabet) {
  return SetCode::mu(listDesc(std::move(alphabet)), Value::unit());
}

inline Value list(const std::vector<std::string>& items) {
  Value v = Value::in(Value::pair(Value::tag("nil"), Value::unit()));
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    v = Value::in(Value::pair(Value::tag("cons"), Value::pair(Value::tag(*it), v)));
  }
  return v;
}

inline std::vector<std::string> listOf(const Value& v) {
  std::vector<std::string> items;
  Value cur = v;
  while (cur.payload().first().tagName() == "cons") {
    items.push_back(cur.payload().second().first().tagName());
    cur = cur.payload().second().second();
  }
  return items;
}

// All lists over the alphabet with length at most maxLen, shortest first,
// alphabet order within a length.
inline std::vector<std::vector<std::string>> allLists(
    const std::vector<std::string>& alphabet, int maxLen) {
  std::vector<std::vector<std::string>> out{{}};
  std::vector<std::vector<std::string>> layer{{}};
  for (int len = 1; len <= maxLen; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : layer) {
      for (const auto& a : alphabet) {
        auto xs = prefix;
        xs.push_back(a);
        next.push_back(xs);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// ---- brute-force function oracles ------------------------------------------

inline std::optional<std::string> bruteLookup(int n, const std::vector<std::string>& xs) {
  if (n >= 0 && static_cast<size_t>(n) < xs.size()) return xs[static_cast<size_t>(n)];
  return std::nullopt;
}

inline std::vector<std::string> bruteAppend(std::vector<std::string> xs,
                                            const std::vector<std::string>& ys) {
  xs.insert(xs.end(), ys.begin(), ys.end());
  return xs;
}

inline bool bruteLess(int m, int n) { return m < n; }
inline int brutePlus(int m, int n) { return m + n; }
inline int bruteMinus(int m, int n) { return m > n ? m - n : 0; }

// ---- walks -----------------------------------------------------------------

// Number of terminating walks from height n whose constructor spine has depth
// at most d (each up/down/stop node consumes one level; stop is only legal at
// height zero and itself has depth zero).
inline long long walkCount(int n, int d) {
  if (d < 0) return 0;
  long long total = n == 0 ? 1 : 0;           // stop
  total += walkCount(n + 1, d - 1);           // up
  if (n > 0) total += walkCount(n - 1, d - 1);  // down
  return total;
}

}  // namespace oracle
