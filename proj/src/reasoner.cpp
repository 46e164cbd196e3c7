#include "cbiont/reasoner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "cbiont/schema.hpp"
#include "cbiont/vocab.hpp"
#include "json.hpp"

namespace cbiont {

namespace {

namespace v = vocab;

constexpr InferenceRule kRules[] = {
    {RuleId::subclass_transitivity, "A subClassOf B and B subClassOf C entail A subClassOf C"},
    {RuleId::type_propagation, "x type A and A subClassOf B entail x type B"},
    {RuleId::domain_typing, "x p y and domain(p, C) entail x type C"},
    {RuleId::range_typing, "x p y and range(p, C) entail y type C for object properties p"},
};

constexpr RuleId kDefaultOrder[] = {
    RuleId::subclass_transitivity,
    RuleId::type_propagation,
    RuleId::domain_typing,
    RuleId::range_typing,
};

bool schema_has_cycle(const Graph& schema) {
  for (const SchemaDefect& defect : validate_schema(schema))
    if (defect.kind == DefectKind::subclass_cycle) return true;
  return false;
}

// Combined view over (schema, abox, derived) without copying the inputs.
struct CombinedView {
  const Graph* parts[3];

  std::vector<Triple> match(const std::optional<Iri>& s, const std::optional<Iri>& p,
                            const std::optional<Term>& o) const {
    std::vector<Triple> out;
    for (const Graph* g : parts)
      for (Triple& t : g->match(s, p, o)) out.push_back(std::move(t));
    return out;
  }
};

}  // namespace

std::span<const InferenceRule> inference_rules() { return kRules; }

Graph materialize(const Graph& abox, const Graph& schema, std::span<const RuleId> rule_order) {
  if (schema_has_cycle(schema))
    throw std::invalid_argument("materialize: schema has a subclass cycle");

  Graph derived;
  const CombinedView all{{&schema, &abox, &derived}};

  auto derive = [&](Triple t) -> bool {
    if (t.predicate == v::rdfs_sub_class_of() && t.object.is_iri() &&
        t.subject == t.object.iri())
      return false;  // never assert reflexive subclass facts
    if (schema.contains(t) || abox.contains(t)) return false;
    return derived.insert(std::move(t));
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const RuleId rule : rule_order) {
      switch (rule) {
        case RuleId::subclass_transitivity: {
          for (const Triple& ab : all.match(std::nullopt, v::rdfs_sub_class_of(), std::nullopt)) {
            if (!ab.object.is_iri()) continue;
            for (const Triple& bc :
                 all.match(ab.object.iri(), v::rdfs_sub_class_of(), std::nullopt)) {
              if (!bc.object.is_iri()) continue;
              changed |= derive(Triple(ab.subject, v::rdfs_sub_class_of(), bc.object));
            }
          }
          break;
        }
        case RuleId::type_propagation: {
          for (const Triple& xt : all.match(std::nullopt, v::rdf_type(), std::nullopt)) {
            if (!xt.object.is_iri()) continue;
            for (const Triple& ab :
                 all.match(xt.object.iri(), v::rdfs_sub_class_of(), std::nullopt)) {
              if (!ab.object.is_iri()) continue;
              changed |= derive(Triple(xt.subject, v::rdf_type(), ab.object));
            }
          }
          break;
        }
        case RuleId::domain_typing: {
          for (const Triple& dom : all.match(std::nullopt, v::rdfs_domain(), std::nullopt)) {
            if (!dom.object.is_iri()) continue;
            for (const Triple& use : all.match(std::nullopt, dom.subject, std::nullopt))
              changed |= derive(Triple(use.subject, v::rdf_type(), dom.object));
          }
          break;
        }
        case RuleId::range_typing: {
          for (const Triple& rng : all.match(std::nullopt, v::rdfs_range(), std::nullopt)) {
            if (!rng.object.is_iri()) continue;
            // Only object properties; literals cannot receive rdf:type.
            if (!schema.contains(
                    Triple(rng.subject, v::rdf_type(), Term(v::owl_object_property()))))
              continue;
            for (const Triple& use : all.match(std::nullopt, rng.subject, std::nullopt)) {
              if (!use.object.is_iri()) continue;
              changed |= derive(Triple(use.object.iri(), v::rdf_type(), rng.object));
            }
          }
          break;
        }
      }
    }
  }

  Graph out = abox;
  merge_into(out, derived);
  return out;
}

Graph materialize(const Graph& abox, const Graph& schema) {
  return materialize(abox, schema, kDefaultOrder);
}

bool is_subclass_of(const Iri& a, const Iri& b, const Graph& schema) {
  if (a == b) return true;
  std::set<Iri> visited{a};
  std::vector<Iri> frontier{a};
  while (!frontier.empty()) {
    const Iri current = std::move(frontier.back());
    frontier.pop_back();
    for (const Triple& t : schema.match(current, v::rdfs_sub_class_of(), std::nullopt)) {
      if (!t.object.is_iri()) continue;
      const Iri& super = t.object.iri();
      if (super == b) return true;
      if (visited.insert(super).second) frontier.push_back(super);
    }
  }
  return false;
}

std::vector<Iri> instances_of(const Iri& c, const Graph& materialized) {
  std::vector<Iri> out;
  for (const Triple& t : materialized.match(std::nullopt, v::rdf_type(), Term(c)))
    out.push_back(t.subject);
  // match() returns (S,P,O)-sorted triples, so subjects are already sorted.
  return out;
}

namespace {

struct DataPropertyInfo {
  std::optional<Iri> range;
  std::vector<Literal> enumeration;  // non-empty when enumerated
};

}  // namespace

std::vector<Violation> validate(const Graph& abox, const Graph& schema, bool pedantic) {
  std::vector<Violation> out;

  // Predicates that are part of the triple encoding itself and thus always
  // "declared".
  const std::set<Iri> structural = {
      v::rdf_type(),    v::rdfs_sub_class_of(), v::rdfs_domain(), v::rdfs_range(),
      v::owl_one_of(),  v::rdf_first(),         v::rdf_rest(),
  };

  std::set<Iri> declared;
  std::map<Iri, DataPropertyInfo> data_properties;
  for (const Triple& t : schema.match(std::nullopt, v::rdf_type(), std::nullopt)) {
    if (!t.object.is_iri()) continue;
    const Iri& kind = t.object.iri();
    if (kind == v::owl_object_property() || kind == v::owl_annotation_property()) {
      declared.insert(t.subject);
    } else if (kind == v::owl_datatype_property()) {
      declared.insert(t.subject);
      data_properties.emplace(t.subject, DataPropertyInfo{});
    }
  }
  if (auto view = axioms(schema); view.ok()) {
    for (const SchemaAxiom& axiom : view.value()) {
      if (const auto* range = std::get_if<Range>(&axiom)) {
        if (auto it = data_properties.find(range->prop); it != data_properties.end())
          it->second.range = range->target;
      } else if (const auto* en = std::get_if<DatatypeEnumeration>(&axiom)) {
        if (auto it = data_properties.find(en->prop); it != data_properties.end())
          it->second.enumeration = en->allowed;
      }
    }
  }

  auto literal_in = [](const Literal& lit, const std::vector<Literal>& allowed) {
    return std::find(allowed.begin(), allowed.end(), lit) != allowed.end();
  };

  for (const Triple& t : abox) {
    const auto dp = data_properties.find(t.predicate);
    if (dp != data_properties.end()) {
      const DataPropertyInfo& info = dp->second;
      if (!info.enumeration.empty()) {
        // Case-sensitive exact match against the enumerated literals
        // (plain strings; parser maps untyped strings to xsd:string).
        if (!t.object.is_literal() || !literal_in(t.object.literal(), info.enumeration)) {
          out.push_back(Violation{Violation::Kind::enumeration_violation, t.subject, t.predicate,
                                  "value " + t.object.ntriples() + " is not one of the allowed literals"});
        }
      } else if (info.range) {
        if (!t.object.is_literal()) {
          out.push_back(Violation{Violation::Kind::datatype_violation, t.subject, t.predicate,
                                  "expected a literal of datatype " + info.range->ntriples() +
                                      ", got " + t.object.ntriples()});
        } else if (!(t.object.literal().datatype() == *info.range)) {
          out.push_back(Violation{Violation::Kind::datatype_violation, t.subject, t.predicate,
                                  "expected datatype " + info.range->ntriples() + ", got " +
                                      t.object.literal().datatype().ntriples()});
        }
      }
      continue;
    }
    if (!structural.count(t.predicate) && !declared.count(t.predicate)) {
      out.push_back(Violation{Violation::Kind::undeclared_term, t.subject, t.predicate,
                              "predicate is not declared in the schema"});
    }
  }

  if (pedantic) {
    // Warn when one individual is typed under two or more leaves of the same
    // hub class (no disjointness axioms exist, so this is legal but odd).
    const std::vector<std::pair<Iri, std::vector<Iri>>> hubs = {
        {v::cbi_form(), {v::form_leaves().begin(), v::form_leaves().end()}},
        {v::cbi_research_aspect(), {v::aspect_leaves().begin(), v::aspect_leaves().end()}},
        {v::cbi_phase(), {v::phase_leaves().begin(), v::phase_leaves().end()}},
    };
    std::map<Iri, std::map<Iri, std::vector<Iri>>> typed;  // individual -> hub -> leaves
    for (const auto& [hub, leaves] : hubs)
      for (const Iri& leaf : leaves)
        for (const Triple& t : abox.match(std::nullopt, v::rdf_type(), Term(leaf)))
          typed[t.subject][hub].push_back(leaf);
    for (const auto& [individual, by_hub] : typed)
      for (const auto& [hub, leaves] : by_hub)
        if (leaves.size() > 1) {
          std::string names;
          for (const Iri& leaf : leaves) names += (names.empty() ? "" : ", ") + leaf.ntriples();
          out.push_back(Violation{Violation::Kind::multi_leaf_typing, individual, hub,
                                  "typed under multiple leaves: " + names});
        }
  }

  return out;
}

std::string_view violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::enumeration_violation: return "enumeration_violation";
    case Violation::Kind::datatype_violation: return "datatype_violation";
    case Violation::Kind::undeclared_term: return "undeclared_term";
    case Violation::Kind::multi_leaf_typing: return "multi_leaf_typing";
  }
  return "?";
}

std::string violations_text(std::span<const Violation> violations) {
  std::string out;
  for (const Violation& violation : violations) {
    out += violation_kind_name(violation.kind);
    out += " subject=" + violation.subject.ntriples();
    if (violation.property) out += " property=" + violation.property->ntriples();
    out += " detail=" + violation.detail + "\n";
  }
  return out;
}

std::string violations_json(std::span<const Violation> violations) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Violation& violation : violations) {
    nlohmann::ordered_json row;
    row["kind"] = std::string(violation_kind_name(violation.kind));
    row["subject"] = violation.subject.value();
    row["property"] = violation.property ? nlohmann::ordered_json(violation.property->value())
                                         : nlohmann::ordered_json(nullptr);
    row["detail"] = violation.detail;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

}  // namespace cbiont
