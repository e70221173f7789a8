#pragma once

#include "trackeval/error.hpp"
#include "trackeval/geometry.hpp"
#include "trackeval/measures.hpp"
#include "trackeval/curves.hpp"
#include "trackeval/dataset_io.hpp"
#include "trackeval/scenarios.hpp"
#include "trackeval/report.hpp"
#include "trackeval/render.hpp"
#include "trackeval/evaluation.hpp"
