#pragma once

#include <iosfwd>

#include "crisiscomm/dtm.hpp"
#include "crisiscomm/lda.hpp"

namespace crisiscomm {

// Versioned single-file JSON documents. Doubles are written in shortest
// round-trip form, so save -> load reproduces the model exactly.
inline constexpr int kModelFormatVersion = 1;

void save_lda(const LdaModel& model, std::ostream& sink);
// Throws DataError on a wrong format tag, unsupported version or bad shape.
LdaModel load_lda(std::istream& source);

void save_dtm(const DtmModel& model, std::ostream& sink);
DtmModel load_dtm(std::istream& source);

void save_coherence_report(const CoherenceReport& report, std::ostream& sink);
CoherenceReport load_coherence_report(std::istream& source);

}  // namespace crisiscomm
