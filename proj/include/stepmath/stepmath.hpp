#pragma once

// Convenience header pulling in the whole library. The HTTP backend is
// separate (stepmath/http_backend.hpp) because it drags in cpp-httplib.

#include "stepmath/agent.hpp"
#include "stepmath/aggregate.hpp"
#include "stepmath/backend.hpp"
#include "stepmath/core.hpp"
#include "stepmath/dataset.hpp"
#include "stepmath/errors.hpp"
#include "stepmath/errortree.hpp"
#include "stepmath/json_extract.hpp"
#include "stepmath/metrics.hpp"
#include "stepmath/prompts.hpp"
#include "stepmath/report.hpp"
#include "stepmath/runner.hpp"
#include "stepmath/settings.hpp"
#include "stepmath/text.hpp"
#include "stepmath/verdict.hpp"
