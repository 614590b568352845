#pragma once

#include "gridiron/core/io.hpp"
#include "gridiron/core/table.hpp"
#include "gridiron/core/validate.hpp"
#include "gridiron/decision/diagnostics.hpp"
#include "gridiron/decision/fourth_down.hpp"
#include "gridiron/decision/pat.hpp"
#include "gridiron/fpm/evaluate.hpp"
#include "gridiron/fpm/synth.hpp"
#include "gridiron/model/cross_validate.hpp"
#include "gridiron/model/game_day.hpp"
#include "gridiron/model/serialize.hpp"
#include "gridiron/ranking/sportsnetrank.hpp"
#include "gridiron/stats/correlation.hpp"
#include "gridiron/stats/linear_fit.hpp"
#include "gridiron/stats/rate_curve.hpp"
#include "gridiron/stats/tests.hpp"
