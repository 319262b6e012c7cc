#pragma once

// JSON encodings shared by the command-line tool and the Python bindings.
//
//   group    {"kind":"int_lattice","d":2} | "heisenberg" | {"kind":"infinite_dihedral"}
//            | {"kind":"free_group","rank":2}, optional "generators":[element,...]
//   element  integer array for Z^d and the Heisenberg group (m,n,p); a reduced
//            word for the word groups, "e" or "" for the identity
//   set      {"rule":"all"} | {"rule":"explicit","elements":[...]}
//            | {"rule":"strip","morphism":[...],"bound":a}
//            | {"rule":"excluded_pairs","base":set,"excluded":[...]}
//            | {"rule":"cross","m":m,"n":n} | {"rule":"length_ball","n":n}
//   matrix   rows of [re,im] pairs (plain numbers are read as real entries)
//   data     {"group":g,"set":s,"d":d,"values":{"<element key>":matrix,...},
//             "default":"zero"|"none"}; keys are "1,0"-style coordinate lists or words

#include <nlohmann/json.hpp>

#include "chordext/cayley.hpp"
#include "chordext/completion.hpp"
#include "chordext/extend.hpp"
#include "chordext/graphs.hpp"
#include "chordext/groups.hpp"

namespace chordext::json_io {

using nlohmann::json;

groups::GroupSpec group_from_json(const json& j);
json group_to_json(const groups::GroupSpec& spec);

groups::GroupElement element_from_json(const groups::GroupSpec& spec, const json& j);
json element_to_json(const groups::GroupElement& x);
/// "1,0" or "(1,0)" for coordinate groups, the word itself otherwise.
groups::GroupElement element_from_key(const groups::GroupSpec& spec, const std::string& key);
std::string element_key(const groups::GroupElement& x);
std::vector<groups::GroupElement> elements_from_json(const groups::GroupSpec& spec, const json& j);
json elements_to_json(std::span<const groups::GroupElement> xs);

groups::SymmetricSet set_from_json(const groups::GroupSpec& spec, const json& j,
                                   const Caps& caps = {});
json set_to_json(const groups::SymmetricSet& s);

completion::ComplexMatrix matrix_from_json(const json& j);
json matrix_to_json(const completion::ComplexMatrix& m);
std::vector<completion::Complex> complex_list_from_json(const json& j);
json complex_to_json(completion::Complex z);

extend::PDFunctionData pd_data_from_json(const json& j, const Caps& caps = {});
json pd_data_to_json(const extend::PDFunctionData& data);

graphs::Graph graph_from_json(const json& j);
json graph_to_json(const graphs::Graph& g);

completion::PartialBlockMatrix partial_from_json(const json& j);
json partial_to_json(const completion::PartialBlockMatrix& p);

/// Certificate with element labels taken from the window when given.
json certificate_to_json(const graphs::ChordalityCertificate& c,
                         const cayley::Window* window = nullptr);
json ball_to_json(const completion::MatrixBall& b);
json pd_check_to_json(const extend::PdCheck& c);
json report_to_json(const extend::ExtensionReport& r);
json z2_certificate_to_json(const extend::Z2Certificate& c);
json cross_certificate_to_json(const extend::CrossCertificate& c);
json atoms_to_json(std::span<const extend::Atom> atoms);
json polygon_cycle_to_json(const cayley::PolygonCycle& c);
json folner_set_to_json(const cayley::FolnerSet& f);

}  // namespace chordext::json_io
