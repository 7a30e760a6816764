#pragma once

#define FRACWAVE_VERSION_MAJOR 0
#define FRACWAVE_VERSION_MINOR 1
#define FRACWAVE_VERSION_PATCH 0
#define FRACWAVE_VERSION_STRING "0.1.0"
