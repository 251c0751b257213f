#pragma once

#include "prosa/vsm.hpp"
#include "prosa/overlay.hpp"
#include "prosa/routing.hpp"
#include "prosa/baselines.hpp"
#include "prosa/metrics.hpp"
#include "prosa/corpus.hpp"
#include "prosa/experiment.hpp"
