#pragma once

#include "trajgroup/connectivity.hpp"
#include "trajgroup/entity_set.hpp"
#include "trajgroup/error.hpp"
#include "trajgroup/events.hpp"
#include "trajgroup/generators.hpp"
#include "trajgroup/groups.hpp"
#include "trajgroup/io.hpp"
#include "trajgroup/model.hpp"
#include "trajgroup/oracle.hpp"
#include "trajgroup/pipeline.hpp"
#include "trajgroup/query.hpp"
#include "trajgroup/reeb.hpp"
#include "trajgroup/robust.hpp"
