#pragma once

#include "pandemic/genome.hpp"
#include "pandemic/rng.hpp"
#include "pandemic/rules.hpp"
#include "pandemic/state.hpp"

namespace pandemic {

// Re-randomizes the hidden deck orders while keeping everything a player
// could know: player-deck city cards are reshuffled globally and re-dealt
// into sub-stacks of the original sizes, each epidemic landing uniformly
// within its own sub-stack; infection sub-stacks are shuffled in place,
// their order and contents untouched.
GameState determinize(const GameState& s, Rng& rng);

// Runs one macro against a possibly-diverged state. Movement legs that have
// become illegal are re-routed to the macro's destination if that fits the
// remaining actions (the rest of the macro is dropped otherwise); an illegal
// terminal action is replaced by a Wait, spending the action point anyway.
// `counts`, when given, tallies the actions actually applied by type.
void execute_macro(GameState& s, const Macro& m,
                   std::array<long long, kNumActionTypes>* counts = nullptr);

// Waits out any leftover action points, then runs the draw and infection
// phases. No-op on a finished game.
void finish_turn(GameState& s, Rng& rng);

// Plays out one gene: its macros, Wait padding to the end of the turn, then
// the draw and infection phases.
void run_gene(GameState& s, const Gene& g, Rng& rng);

// Determinizes, then plays the genome's genes in order; stops early when the
// game ends. Returns the horizon-end (or terminal) state. Never throws on
// stochastic divergence: incompatible actions are absorbed.
GameState rollout(const GameState& s, const Genome& genome, Rng& rng);

}  // namespace pandemic
