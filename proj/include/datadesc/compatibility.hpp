#pragma once

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

struct CompatibilityReport {
    bool compatible = true;
    Diagnostics reasons; ///< one entry per failed clause
};

/// Whether every value the producer may emit is acceptable to the consumer:
/// equal types, range containment, value-set inclusion, unit agreement and
/// position-wise dimension agreement. Class references compare by path.
CompatibilityReport check_compatibility(const VariableDescription& producer,
                                        const VariableDescription& consumer);

/// As above, but class references are resolved in their own documents and
/// compared structurally (equal property maps).
CompatibilityReport check_compatibility(const VariableDescription& producer,
                                        const DataDescDocument& producer_doc,
                                        const VariableDescription& consumer,
                                        const DataDescDocument& consumer_doc);

} // namespace datadesc
