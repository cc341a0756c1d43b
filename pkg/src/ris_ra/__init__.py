"""RIS-aided random access: channel model, pathloss statistics, protocol."""

from .channel import (Carrier, Codebook, LinkBudget, Panel, Placement, array_factor,
                      build_codebook, channel_coefficient, codebook_table, db_to_linear,
                      dbm_to_watt, far_field_distance, linear_to_db, pathloss, total_phase,
                      DOWNLINK, UPLINK)
from .distributions import (SquareDeployment, dl_pathloss_cdf, dl_pathloss_pdf, dl_support,
                            ks_distance, pathloss_constant, sample_dl_pathloss,
                            sample_ue_position, sample_ul_pathloss, ul_pathloss_cdf,
                            ul_pathloss_pdf, ul_support)
from .harness import (Campaign, ConfigError, POLICY_IDS, ResultRow, build_campaign,
                      build_scenario, compute_throughput, load_config, run_campaign,
                      simulate_point, summarize, write_results)
from .protocol import (CARP, Drop, QUARTER_DISC, SCP, SQUARE, Scenario, URP, UplinkFrame,
                       build_uplink_frame, dl_coefficients, phase_durations, run_training,
                       sample_drop, select_slots, ul_coefficients)
from .scatter import (SphericalLink, continuous_plate_field, continuous_plate_pathloss,
                      discrete_scattered_field, inplane_downlink, inplane_uplink,
                      specular_direction)
from .sic import AccessGraph, Resolution, TraceStep, build_access_graph, resolve

__version__ = "0.1.0"
