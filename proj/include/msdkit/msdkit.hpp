#pragma once

// Umbrella header for the whole toolkit.

#include "msdkit/core/caption_io.hpp"
#include "msdkit/core/error.hpp"
#include "msdkit/core/jsonl.hpp"
#include "msdkit/core/logit_io.hpp"
#include "msdkit/core/pose_io.hpp"
#include "msdkit/core/types.hpp"
#include "msdkit/engine/decode.hpp"
#include "msdkit/engine/synergy.hpp"
#include "msdkit/keyframe/sampler.hpp"
#include "msdkit/metrics/bleu.hpp"
#include "msdkit/metrics/cider.hpp"
#include "msdkit/metrics/classification.hpp"
#include "msdkit/metrics/judge.hpp"
#include "msdkit/metrics/meteor.hpp"
#include "msdkit/metrics/porter.hpp"
#include "msdkit/metrics/rouge.hpp"
#include "msdkit/metrics/tokenize.hpp"
#include "msdkit/pose/filter.hpp"
#include "msdkit/pose/motion.hpp"
#include "msdkit/sim/harness.hpp"
