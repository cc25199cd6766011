// qent4.hpp
// Umbrella header.

#pragma once

#include "qent4/entanglement.hpp"
#include "qent4/extremal.hpp"
#include "qent4/invariants.hpp"
#include "qent4/json_io.hpp"
#include "qent4/linalg.hpp"
#include "qent4/search.hpp"
#include "qent4/states.hpp"
#include "qent4/threading.hpp"
#include "qent4/verify.hpp"
