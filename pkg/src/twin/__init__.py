"""Digital twin for library lighting assets.

The package models a building as a tree of subsystems, floors, user areas
and measured parameters, ingests telemetry into an append-only event log,
classifies readings into five health levels, projects trends three and six
months out, and turns the results into corrective, predictive and
preventive work orders with a small resource scheduler.  A FastAPI service
exposes the state; ``twin`` on the command line drives it.
"""

__version__ = "0.1.0"
