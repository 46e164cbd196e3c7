#pragma once

#include <array>
#include <map>
#include <string>

#include "cbiont/term.hpp"

// Namespaces and well-known IRIs used across the knowledge base. The CBIOnt
// namespaces are project constants; the external ones are the published
// RDF/RDFS/OWL/XSD vocabularies plus OWL-Time, WGS84 geo, and FOAF.
namespace cbiont::vocab {

inline constexpr const char* kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* kOwlNs = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr const char* kTimeNs = "http://www.w3.org/2006/time#";
inline constexpr const char* kGeoNs = "http://www.w3.org/2003/01/geo/wgs84_pos#";
inline constexpr const char* kFoafNs = "http://xmlns.com/foaf/0.1/";
inline constexpr const char* kCbiontNs = "http://bi4people.org/ontology/cbiont#";
inline constexpr const char* kCbidataNs = "http://bi4people.org/data/cbiont/";

#define CBIONT_VOCAB_TERM(fn, ns, local)            \
  inline const Iri& fn() {                          \
    static const Iri iri{std::string(ns) + local};  \
    return iri;                                     \
  }

CBIONT_VOCAB_TERM(rdf_type, kRdfNs, "type")
CBIONT_VOCAB_TERM(rdf_first, kRdfNs, "first")
CBIONT_VOCAB_TERM(rdf_rest, kRdfNs, "rest")
CBIONT_VOCAB_TERM(rdf_nil, kRdfNs, "nil")
CBIONT_VOCAB_TERM(rdf_lang_string, kRdfNs, "langString")

CBIONT_VOCAB_TERM(rdfs_sub_class_of, kRdfsNs, "subClassOf")
CBIONT_VOCAB_TERM(rdfs_domain, kRdfsNs, "domain")
CBIONT_VOCAB_TERM(rdfs_range, kRdfsNs, "range")
CBIONT_VOCAB_TERM(rdfs_datatype, kRdfsNs, "Datatype")

CBIONT_VOCAB_TERM(owl_class, kOwlNs, "Class")
CBIONT_VOCAB_TERM(owl_object_property, kOwlNs, "ObjectProperty")
CBIONT_VOCAB_TERM(owl_datatype_property, kOwlNs, "DatatypeProperty")
CBIONT_VOCAB_TERM(owl_annotation_property, kOwlNs, "AnnotationProperty")
CBIONT_VOCAB_TERM(owl_one_of, kOwlNs, "oneOf")

CBIONT_VOCAB_TERM(xsd_string, kXsdNs, "string")
CBIONT_VOCAB_TERM(xsd_integer, kXsdNs, "integer")
CBIONT_VOCAB_TERM(xsd_boolean, kXsdNs, "boolean")
CBIONT_VOCAB_TERM(xsd_decimal, kXsdNs, "decimal")
CBIONT_VOCAB_TERM(xsd_date_time, kXsdNs, "dateTime")

CBIONT_VOCAB_TERM(time_temporal_entity, kTimeNs, "TemporalEntity")
CBIONT_VOCAB_TERM(time_interval, kTimeNs, "Interval")
CBIONT_VOCAB_TERM(time_instant, kTimeNs, "Instant")
CBIONT_VOCAB_TERM(time_in_xsd_date_time, kTimeNs, "inXSDDateTime")

CBIONT_VOCAB_TERM(geo_spatial_thing, kGeoNs, "SpatialThing")
CBIONT_VOCAB_TERM(geo_lat, kGeoNs, "lat")
CBIONT_VOCAB_TERM(geo_long, kGeoNs, "long")

CBIONT_VOCAB_TERM(foaf_agent, kFoafNs, "Agent")
CBIONT_VOCAB_TERM(foaf_person, kFoafNs, "Person")
CBIONT_VOCAB_TERM(foaf_group, kFoafNs, "Group")
CBIONT_VOCAB_TERM(foaf_organization, kFoafNs, "Organization")

// CBIOnt classes.
CBIONT_VOCAB_TERM(cbi_session, kCbiontNs, "CBI_Session")
CBIONT_VOCAB_TERM(cbi_temporal_spatial_session, kCbiontNs, "CBI_Temporal_Spatial_Session")
CBIONT_VOCAB_TERM(collaborator, kCbiontNs, "Collaborator")
CBIONT_VOCAB_TERM(cbi_form, kCbiontNs, "CBI_Form")
CBIONT_VOCAB_TERM(cbi_research_aspect, kCbiontNs, "CBI_Research_Aspect")
CBIONT_VOCAB_TERM(cbi_phase, kCbiontNs, "CBI_Phase")
CBIONT_VOCAB_TERM(remark, kCbiontNs, "Remark")

CBIONT_VOCAB_TERM(general_discussion, kCbiontNs, "General_Discussion")
CBIONT_VOCAB_TERM(annotation_form, kCbiontNs, "Annotation")
CBIONT_VOCAB_TERM(report_centric_discussion, kCbiontNs, "Report_Centric_Discussion")
CBIONT_VOCAB_TERM(visualizing_behavior, kCbiontNs, "Visualizing_Behavior")
CBIONT_VOCAB_TERM(trend_analysis, kCbiontNs, "Trend_Analysis")
CBIONT_VOCAB_TERM(task_coordination, kCbiontNs, "Task_Coordination")
CBIONT_VOCAB_TERM(information_sharing, kCbiontNs, "Information_Sharing")

CBIONT_VOCAB_TERM(collaborative_query_formulation, kCbiontNs, "Collaborative_Query_Formulation")
CBIONT_VOCAB_TERM(collaborative_source_discovery, kCbiontNs, "Collaborative_Source_Discovery")
CBIONT_VOCAB_TERM(collaborative_data_acquisition, kCbiontNs, "Collaborative_Data_Acquisition")
CBIONT_VOCAB_TERM(collaborative_data_integration, kCbiontNs, "Collaborative_Data_Integration")
CBIONT_VOCAB_TERM(collaborative_data_presentation, kCbiontNs, "Collaborative_Data_Presentation")

CBIONT_VOCAB_TERM(pre_decision_phase, kCbiontNs, "Pre_Decision_Phase")
CBIONT_VOCAB_TERM(decision_phase, kCbiontNs, "Decision_Phase")
CBIONT_VOCAB_TERM(post_decision_phase, kCbiontNs, "Post_Decision_Phase")

// CBIOnt properties.
CBIONT_VOCAB_TERM(owned_by, kCbiontNs, "owned_by")
CBIONT_VOCAB_TERM(associated_with, kCbiontNs, "associated_with")
CBIONT_VOCAB_TERM(belongs_to, kCbiontNs, "belongs_to")
CBIONT_VOCAB_TERM(has_type, kCbiontNs, "has_type")
CBIONT_VOCAB_TERM(contains_remark, kCbiontNs, "contains_remark")
CBIONT_VOCAB_TERM(has_location, kCbiontNs, "has_location")
CBIONT_VOCAB_TERM(has_time, kCbiontNs, "has_time")
CBIONT_VOCAB_TERM(affiliated_with, kCbiontNs, "affiliated_with")
CBIONT_VOCAB_TERM(authored_by, kCbiontNs, "authored_by")
CBIONT_VOCAB_TERM(has_remark, kCbiontNs, "hasRemark")
CBIONT_VOCAB_TERM(has_description, kCbiontNs, "hasDescription")
CBIONT_VOCAB_TERM(is_extension, kCbiontNs, "isExtension")

#undef CBIONT_VOCAB_TERM

const std::array<Iri, 7>& form_leaves();
const std::array<Iri, 5>& aspect_leaves();
const std::array<Iri, 3>& phase_leaves();

// Prefix label -> namespace IRI. Labels are unique by construction of the
// map; the empty label is allowed.
using PrefixMap = std::map<std::string, Iri>;

// The prefix map used for all canonical serializations of this project.
const PrefixMap& standard_prefixes();

}  // namespace cbiont::vocab
