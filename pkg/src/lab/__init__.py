"""
Property lab: categorical adapters, square and cube certification, seeded
generators and the campaigns that check the adhesivity lemmas.
"""

from .campaigns import CampaignReport, check_counterexample, check_pb_stability, check_vk
from .squares import Cube, Square, certify_pullback, certify_pushout, check_vk_cube

__all__ = ["CampaignReport", "Cube", "Square", "certify_pullback", "certify_pushout",
           "check_counterexample", "check_pb_stability", "check_vk", "check_vk_cube"]
