#pragma once

#include <string>
#include <string_view>

#include "formaltrip/grammar/dataset.hpp"
#include "formaltrip/llm/pipeline.hpp"
#include "formaltrip/verify/verdict.hpp"

namespace formaltrip::store {

/// Single-line JSON encodings; the decoders throw IoError on malformed or incomplete input.
std::string to_json_line(const grammar::DatasetRecord& r);
grammar::DatasetRecord dataset_record_from_json(std::string_view line);

std::string to_json_line(const llm::RoundTripRecord& r);
llm::RoundTripRecord round_trip_record_from_json(std::string_view line);

std::string to_json_line(const llm::JudgeRecord& r);
llm::JudgeRecord judge_record_from_json(std::string_view line);

std::string to_json_line(const verify::EquivalenceVerdict& v);
verify::EquivalenceVerdict verdict_from_json(std::string_view line);

}  // namespace formaltrip::store
