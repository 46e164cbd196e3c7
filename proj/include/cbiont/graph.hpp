#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbiont/term.hpp"

namespace cbiont {

// One RDF assertion. Subjects and predicates are IRIs by construction (the
// model has no blank nodes and literals may not appear in those positions).
struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  Triple(Iri s, Iri p, Term o)
      : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {}

  bool operator==(const Triple& other) const {
    return subject == other.subject && predicate == other.predicate && object == other.object;
  }

  // Canonical N-Triples line, without trailing newline: "<s> <p> <o> ."
  std::string ntriples_line() const;
};

namespace detail {

// Lookup keys for prefix-bounded range scans over the index sets.
struct SKey { const Iri& s; };
struct SpKey { const Iri& s; const Iri& p; };
struct PKey { const Iri& p; };
struct PoKey { const Iri& p; const Term& o; };
struct OKey { const Term& o; };
struct OsKey { const Term& o; const Iri& s; };

int compare_spo(const Triple& a, const Triple& b);

struct SpoOrder {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const { return compare_spo(a, b) < 0; }
  bool operator()(const Triple& a, const SKey& k) const { return a.subject.compare(k.s) < 0; }
  bool operator()(const SKey& k, const Triple& b) const { return k.s.compare(b.subject) < 0; }
  bool operator()(const Triple& a, const SpKey& k) const;
  bool operator()(const SpKey& k, const Triple& b) const;
};

struct PosOrder {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const;
  bool operator()(const Triple& a, const PKey& k) const { return a.predicate.compare(k.p) < 0; }
  bool operator()(const PKey& k, const Triple& b) const { return k.p.compare(b.predicate) < 0; }
  bool operator()(const Triple& a, const PoKey& k) const;
  bool operator()(const PoKey& k, const Triple& b) const;
};

struct OspOrder {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const;
  bool operator()(const Triple& a, const OKey& k) const { return a.object.compare(k.o) < 0; }
  bool operator()(const OKey& k, const Triple& b) const { return k.o.compare(b.object) < 0; }
  bool operator()(const Triple& a, const OsKey& k) const;
  bool operator()(const OsKey& k, const Triple& b) const;
};

}  // namespace detail

// In-memory triple store with set semantics and three sorted indexes keyed
// (S,P,O), (P,O,S) and (O,S,P). Pattern lookups pick the index whose key
// order starts with the bound positions. Many concurrent readers or one
// writer; the store never spawns threads itself.
class Graph {
 public:
  using SpoSet = std::set<Triple, detail::SpoOrder>;

  // True iff the triple was absent before.
  bool insert(Triple t);

  // True iff the triple was present before.
  bool remove(const Triple& t);

  bool contains(const Triple& t) const;

  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }

  // All triples agreeing with the bound positions, sorted by the N-Triples
  // rendering of (S, P, O). Unbound positions match anything.
  std::vector<Triple> match(const std::optional<Iri>& s,
                            const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  // Verification hook: evaluates the same pattern by filtering a full scan of
  // one chosen index structure. Used by tests to check the indexes agree.
  enum class IndexOrder { spo, pos, osp };
  std::vector<Triple> match_scan(IndexOrder index,
                                 const std::optional<Iri>& s,
                                 const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const;

  // Iteration in (S,P,O) order.
  SpoSet::const_iterator begin() const noexcept { return spo_.begin(); }
  SpoSet::const_iterator end() const noexcept { return spo_.end(); }

  bool operator==(const Graph& other) const { return spo_ == other.spo_; }

 private:
  SpoSet spo_;
  std::set<Triple, detail::PosOrder> pos_;
  std::set<Triple, detail::OspOrder> osp_;
};

inline bool graph_equal(const Graph& a, const Graph& b) { return a == b; }

// Set union; returns the number of triples actually added to `into`.
std::size_t merge_into(Graph& into, const Graph& from);

}  // namespace cbiont
