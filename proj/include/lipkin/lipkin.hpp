#pragma once

#include "lipkin/common.hpp"     // IWYU pragma: export
#include "lipkin/discord.hpp"    // IWYU pragma: export
#include "lipkin/fock.hpp"       // IWYU pragma: export
#include "lipkin/gcm.hpp"        // IWYU pragma: export
#include "lipkin/mean_field.hpp" // IWYU pragma: export
#include "lipkin/model.hpp"      // IWYU pragma: export
#include "lipkin/rdm.hpp"        // IWYU pragma: export
#include "lipkin/scan.hpp"       // IWYU pragma: export
