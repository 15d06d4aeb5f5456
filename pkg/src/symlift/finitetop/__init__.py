from .spaces import (FiniteTopology, bits, continuous, continuous_maps,
                     enumerate_topologies, mask_of)
from .audit import REGISTRY, AuditReport, audit, audit_all, replay
from .quotients import QuotientSpace, build_quotients
