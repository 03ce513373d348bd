"""Plug-and-play sensor device management over self-describing TEDS.

Subpackages:
    codec     -- bit-exact TLV / TEDS block encoder and decoder
    authoring -- templates, device-description XML, TEDS generation, registration
    registry  -- the virtual-TEDS directory service (server, client, store)
    ncap      -- the gateway daemon: discovery, cache, control plane, data plane
    timsim    -- simulated transducer interface modules
    bench     -- Case A / Case B stage-latency microbenchmark harness
"""

__version__ = "0.1.0"
