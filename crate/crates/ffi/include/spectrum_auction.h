/* C interface to the spectrum-auction allocation core. */

#ifndef SPECTRUM_AUCTION_H
#define SPECTRUM_AUCTION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum SaStatus {
  SA_STATUS_OK = 0,
  SA_STATUS_NULL_POINTER = 1,
  SA_STATUS_INVALID_ARGUMENT = 2,
  SA_STATUS_DUPLICATE_SU_ID = 3,
  SA_STATUS_OVERFLOW = 4,
  SA_STATUS_TOO_MANY_BIDS = 5,
} SaStatus;

/**
 * Allocation policy selector.
 */
typedef enum SaPolicy {
  SA_POLICY_FIFO = 0,
  SA_POLICY_GREEDY = 1,
  SA_POLICY_DP = 2,
} SaPolicy;

/**
 * Sealed bids of one auction round, in arrival order. Opaque.
 */
typedef struct SaBidList SaBidList;

/**
 * Result of one allocation. Opaque.
 */
typedef struct SaOutcome SaOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free.
 */
const char *sa_version(void);

/**
 * Creates an empty bid list. Free with [`sa_bid_list_free`].
 */
struct SaBidList *sa_bid_list_new(void);

/**
 * Appends one sealed bid. Arrival order is append order. `su_id` and
 * `channels` must be positive; duplicates are caught at allocation time.
 *
 * # Safety
 * `list` must be null or a live pointer from [`sa_bid_list_new`].
 */
enum SaStatus sa_bid_list_push(struct SaBidList *list,
                               uint32_t su_id,
                               uint32_t channels,
                               uint64_t price_cents);

/**
 * Number of bids pushed so far; 0 for null.
 *
 * # Safety
 * `list` must be null or a live pointer from [`sa_bid_list_new`].
 */
uint32_t sa_bid_list_len(const struct SaBidList *list);

/**
 * # Safety
 * `list` must be null or a pointer from [`sa_bid_list_new`] not yet freed.
 */
void sa_bid_list_free(struct SaBidList *list);

/**
 * Runs one policy over the bid list with `free_channels` capacity. On
 * `SA_STATUS_OK`, `*out` owns the outcome; free it with
 * [`sa_outcome_free`].
 *
 * # Safety
 * `list` must be a live pointer from [`sa_bid_list_new`]; `out` must point
 * to writable storage for one pointer.
 */
enum SaStatus sa_allocate(enum SaPolicy policy,
                          const struct SaBidList *list,
                          uint32_t free_channels,
                          struct SaOutcome **out);

/**
 * Total gain in cents (winners pay their own bid).
 *
 * # Safety
 * `outcome` must be null or a live pointer from [`sa_allocate`].
 */
uint64_t sa_outcome_total_gain_cents(const struct SaOutcome *outcome);

/**
 * # Safety
 * `outcome` must be null or a live pointer from [`sa_allocate`].
 */
uint32_t sa_outcome_channels_used(const struct SaOutcome *outcome);

/**
 * # Safety
 * `outcome` must be null or a live pointer from [`sa_allocate`].
 */
uint32_t sa_outcome_winner_count(const struct SaOutcome *outcome);

/**
 * Copies up to `capacity` winning su_ids into `buffer`, ascending.
 * Returns how many were written.
 *
 * # Safety
 * `outcome` must be null or a live pointer from [`sa_allocate`];
 * `buffer` must point to at least `capacity` writable `u32`s.
 */
uint32_t sa_outcome_winners(const struct SaOutcome *outcome, uint32_t *buffer, uint32_t capacity);

/**
 * True when `su_id` won channels in this outcome.
 *
 * # Safety
 * `outcome` must be null or a live pointer from [`sa_allocate`].
 */
bool sa_outcome_is_winner(const struct SaOutcome *outcome, uint32_t su_id);

/**
 * # Safety
 * `outcome` must be null or a pointer from [`sa_allocate`] not yet freed.
 */
void sa_outcome_free(struct SaOutcome *outcome);

/**
 * Simulated waiting time of `su_index` (1-based) out of `nb` arrivals
 * spaced `arrival_interval_ms` apart, with the decision taken
 * `pu_launch_delay_ms` after the last arrival:
 * `(nb - su_index) * interval + delay`, in milliseconds.
 *
 * # Safety
 * `out_ms` must point to writable storage for one `u64`.
 */
enum SaStatus sa_response_time_ms(uint32_t nb,
                                  uint32_t su_index,
                                  uint64_t arrival_interval_ms,
                                  uint64_t pu_launch_delay_ms,
                                  uint64_t *out_ms);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPECTRUM_AUCTION_H */
