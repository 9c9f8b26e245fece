#pragma once
// Ordered record of protocol events. Position indices are 0-based in memory
// and rendered 1-based in reports. The event order encodes the protocol's
// discipline: a particle's return precedes the next send on the same channel,
// operation announcements come only after a sequence's round trips are all
// complete, and measurement bits appear only after an explicit request.

#include <cstddef>
#include <string>
#include <vector>

namespace sqpc {

struct TranscriptEvent {
  std::string type;   // prepare | send | return | announce-choices | request-bits |
                      // announce-bits | check | sift | announce-response |
                      // announce-masked-key | verdict | abort
  std::string seq;    // t1 | t3 | t5t6 | "" when not sequence-bound
  std::string party;  // alice | bob | tp | tp2 | ""
  std::string basis;  // z | bell | "" for non-measurement events
  std::vector<std::size_t> positions;
  std::vector<int> bits;
  std::string detail;  // category, verdict, reason, or hex payload
};

using Transcript = std::vector<TranscriptEvent>;

}  // namespace sqpc
