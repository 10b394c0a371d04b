#ifndef ADVCLASS_NE_H
#define ADVCLASS_NE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum AdvneStatus {
  ADVNE_STATUS_OK = 0,
  ADVNE_STATUS_NULL_POINTER = 1,
  ADVNE_STATUS_INVALID_INPUT = 2,
  /**
   * The game violates a modelling assumption, e.g. a reward level without non-attacker mass.
   */
  ADVNE_STATUS_MODEL_ASSUMPTION = 3,
  /**
   * The computed equilibrium did not pass its best-response check.
   */
  ADVNE_STATUS_VERIFICATION_FAILED = 4,
  ADVNE_STATUS_INTERNAL = 5,
  ADVNE_STATUS_BUFFER_TOO_SMALL = 6,
  ADVNE_STATUS_PANIC = 7,
} AdvneStatus;

/**
 * A reduced game: sorted reward levels with their non-attacker mass and the cost parameters.
 */
typedef struct AdvneGame AdvneGame;

/**
 * The complete equilibrium set of a game together with its verification report.
 */
typedef struct AdvneSolution AdvneSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *advne_version(void);

/**
 * Message of the last failed call on this thread, or an empty string.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *advne_last_error(void);

/**
 * Builds a game from the JSON document accepted by the command-line tool.
 */
enum AdvneStatus advne_game_from_json(const char *json, struct AdvneGame **out);

/**
 * Builds a game from per-vector rewards and non-attacker probabilities.
 *
 * Vectors with equal rewards are merged into one reward level.
 */
enum AdvneStatus advne_game_from_vectors(const double *rewards,
                                         const double *noise,
                                         size_t len,
                                         double prior,
                                         double detection_cost,
                                         double false_alarm_cost,
                                         struct AdvneGame **out);

/**
 * Single-feature game with rewards `0, c_a, ..., trials * c_a` and binomial non-attacker mass.
 */
enum AdvneStatus advne_game_binomial(uint32_t trials,
                                     double theta0,
                                     double reward_unit,
                                     double prior,
                                     double detection_cost,
                                     double false_alarm_cost,
                                     struct AdvneGame **out);

/**
 * Number of distinct reward levels.
 */
enum AdvneStatus advne_game_levels(const struct AdvneGame *game, size_t *out);

/**
 * Copies the sorted reward levels into `buf`, which must hold at least `advne_game_levels` values.
 */
enum AdvneStatus advne_game_rewards(const struct AdvneGame *game, double *buf, size_t len);

void advne_game_free(struct AdvneGame *game);

/**
 * Computes every equilibrium of `game` and checks it against all pure deviations.
 *
 * `epsilon` is the positive shift of the cost matrix; 1.0 is a good default.
 * Returns `ADVNE_STATUS_VERIFICATION_FAILED` without a solution if the check fails.
 */
enum AdvneStatus advne_solve(const struct AdvneGame *game,
                             double epsilon,
                             struct AdvneSolution **out);

/**
 * Structural case of the equilibrium set, 1 to 4.
 */
enum AdvneStatus advne_solution_case(const struct AdvneSolution *solution, uint32_t *out);

/**
 * 1-based index of the lowest reward level in the equilibrium supports.
 */
enum AdvneStatus advne_solution_support_start(const struct AdvneSolution *solution, size_t *out);

enum AdvneStatus advne_solution_defender_payoff(const struct AdvneSolution *solution, double *out);

/**
 * Smallest and largest attacker payoff over the equilibrium set.
 */
enum AdvneStatus advne_solution_attacker_payoff(const struct AdvneSolution *solution,
                                                double *lo,
                                                double *hi);

/**
 * Number of vertices of the defender and attacker equilibrium polytopes.
 */
enum AdvneStatus advne_solution_vertex_counts(const struct AdvneSolution *solution,
                                              size_t *defender,
                                              size_t *attacker);

/**
 * Copies defender vertex `index`: one weight per reward threshold followed by never-classify,
 * `levels + 1` values in all.
 */
enum AdvneStatus advne_solution_defender_vertex(const struct AdvneSolution *solution,
                                                size_t index,
                                                double *buf,
                                                size_t len);

/**
 * Copies attacker vertex `index`: one weight per reward level.
 */
enum AdvneStatus advne_solution_attacker_vertex(const struct AdvneSolution *solution,
                                                size_t index,
                                                double *buf,
                                                size_t len);

/**
 * The solution as a JSON object; release with `advne_string_free`.
 */
enum AdvneStatus advne_solution_to_json(const struct AdvneSolution *solution, char **out);

void advne_solution_free(struct AdvneSolution *solution);

void advne_string_free(char *s);

/**
 * Checks a strategy pair of the reduced game against every pure deviation.
 *
 * `attacker` holds one weight per reward level and `defender` one per
 * threshold plus never-classify. `passed` receives the verdict; a rejected
 * pair is not an error.
 */
enum AdvneStatus advne_verify(const struct AdvneGame *game,
                              const double *attacker,
                              size_t attacker_len,
                              const double *defender,
                              size_t defender_len,
                              double tol,
                              bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADVCLASS_NE_H */
