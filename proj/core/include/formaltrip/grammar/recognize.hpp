#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "formaltrip/grammar/grammar.hpp"

namespace formaltrip::grammar {

/// Earley membership test. Input symbols may be nonterminals, in which case they match
/// themselves, so partially derived sentential forms are accepted too.
bool recognize_symbols(const Grammar& g, std::span<const Symbol> input);

/// Maps instantiated text back onto grammar symbols: proposition names become `v`, FOL
/// atoms `p`, quantified variables `f`, regex symbols `Σ`. Tokens that spell a grammar
/// symbol map to it directly. Returns nullopt for text with unmappable tokens.
std::optional<std::vector<Symbol>> deinstantiate(const Grammar& g, std::string_view text);

/// recognize_symbols(deinstantiate(text)); false when de-instantiation fails.
bool recognize(const Grammar& g, std::string_view text);

}  // namespace formaltrip::grammar
