#include "cbiont/vocab.hpp"

namespace cbiont::vocab {

const std::array<Iri, 7>& form_leaves() {
  static const std::array<Iri, 7> leaves = {
      general_discussion(),   annotation_form(),  report_centric_discussion(),
      visualizing_behavior(), trend_analysis(),   task_coordination(),
      information_sharing(),
  };
  return leaves;
}

const std::array<Iri, 5>& aspect_leaves() {
  static const std::array<Iri, 5> leaves = {
      collaborative_query_formulation(), collaborative_source_discovery(),
      collaborative_data_acquisition(),  collaborative_data_integration(),
      collaborative_data_presentation(),
  };
  return leaves;
}

const std::array<Iri, 3>& phase_leaves() {
  static const std::array<Iri, 3> leaves = {
      pre_decision_phase(),
      decision_phase(),
      post_decision_phase(),
  };
  return leaves;
}

const PrefixMap& standard_prefixes() {
  static const PrefixMap prefixes = {
      {"cbidata", Iri(kCbidataNs)}, {"cbiont", Iri(kCbiontNs)}, {"foaf", Iri(kFoafNs)},
      {"geo", Iri(kGeoNs)},         {"owl", Iri(kOwlNs)},       {"rdf", Iri(kRdfNs)},
      {"rdfs", Iri(kRdfsNs)},       {"time", Iri(kTimeNs)},     {"xsd", Iri(kXsdNs)},
  };
  return prefixes;
}

}  // namespace cbiont::vocab
