#pragma once

// Everything except the HTTP binding (quilts/http_api.hpp), which pulls in
// cpp-httplib.

#include "quilts/bundle.hpp"
#include "quilts/color.hpp"
#include "quilts/depict.hpp"
#include "quilts/error.hpp"
#include "quilts/generator.hpp"
#include "quilts/graph.hpp"
#include "quilts/json_io.hpp"
#include "quilts/matrix_layout.hpp"
#include "quilts/nodelink_layout.hpp"
#include "quilts/path_engine.hpp"
#include "quilts/quilt_layout.hpp"
#include "quilts/random.hpp"
#include "quilts/record.hpp"
#include "quilts/schedule.hpp"
#include "quilts/summary.hpp"
#include "quilts/svg.hpp"
#include "quilts/trial_service.hpp"
#include "quilts/treatment.hpp"
