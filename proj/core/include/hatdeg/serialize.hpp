#pragma once

// JSON forms of the result types. Integers that may outgrow 64 bits (q,
// budgets) are written as numbers when they fit and as decimal strings
// otherwise; rationals are {"num": "...", "den": "..."} with string parts.
// Vertex-keyed maps use the decimal vertex id as the key.

#include <hatdeg/certifier.hpp>
#include <hatdeg/density.hpp>
#include <hatdeg/elimination.hpp>
#include <hatdeg/exact_game.hpp>
#include <hatdeg/graph.hpp>

#include <nlohmann/json.hpp>

namespace hatdeg {

using Json = nlohmann::json;

auto bigint_to_json(const BigInt & x) -> Json;
auto bigint_from_json(const Json & j) -> BigInt;
auto rational_to_json(const Rational & x) -> Json;
auto rational_from_json(const Json & j) -> Rational;
auto budget_to_json(const GuessBudget & b) -> Json;
auto budget_from_json(const Json & j) -> GuessBudget;

void to_json(Json & j, const EliminationOrder & o);
void from_json(const Json & j, EliminationOrder & o);
void to_json(Json & j, const StuckSubgraph & s);
void to_json(Json & j, const StrongDegeneracy & s);

void to_json(Json & j, const ObstructionWitness & w);
void from_json(const Json & j, ObstructionWitness & w);

void to_json(Json & j, const ReductionCertificate & c);
void from_json(const Json & j, ReductionCertificate & c);
void to_json(Json & j, const CertificationFailure & f);

void to_json(Json & j, const StrategyTable & s);
void from_json(const Json & j, StrategyTable & s);
void to_json(Json & j, const SearchStats & s);
void to_json(Json & j, const GameOutcome & o);

void to_json(Json & j, const TopologicalModel & m);
void from_json(const Json & j, TopologicalModel & m);
void to_json(Json & j, const ContractionModel & m);
void from_json(const Json & j, ContractionModel & m);
void to_json(Json & j, const Density & d);
void from_json(const Json & j, Density & d);

}
