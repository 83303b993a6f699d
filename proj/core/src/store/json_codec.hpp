#pragma once

#include <json.hpp>

#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/grammar/vocabulary.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/verify/verdict.hpp"

namespace formaltrip::store::detail {

using ojson = nlohmann::ordered_json;

ojson vocabulary_config_json(const grammar::VocabularyConfig& c);
grammar::VocabularyConfig vocabulary_config_from(const ojson& j);

ojson vocabulary_json(const grammar::Vocabulary& v);
grammar::Vocabulary vocabulary_from(const ojson& j);

ojson generation_json(const grammar::GenerationConfig& c);
grammar::GenerationConfig generation_from(const ojson& j);

/// Integer for count metrics, real for dfa_density.
ojson category_json(syntax::Metric m, double value);

ojson verdict_json(const verify::EquivalenceVerdict& v);
verify::EquivalenceVerdict verdict_from(const ojson& j);

ojson dataset_record_json(const grammar::DatasetRecord& r);
grammar::DatasetRecord dataset_record_from(const ojson& j);

ojson round_trip_json(const llm::RoundTripRecord& r);
llm::RoundTripRecord round_trip_from(const ojson& j);

ojson judge_json(const llm::JudgeRecord& r);
llm::JudgeRecord judge_from(const ojson& j);

/// Parses one line; throws IoError naming `what` on failure.
ojson parse_line(std::string_view line, std::string_view what);

}  // namespace formaltrip::store::detail
