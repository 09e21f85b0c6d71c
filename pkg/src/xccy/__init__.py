"""Cross-currency curve construction and CCS/NCS pricing with explicit funding."""

from .calibration import (CurveSet, bootstrap_forward_libor, bootstrap_fx_forwards_from_ccs, bootstrap_ois,
                          build_curve_set, recalibrate_basis_discount_curve, round_trip_residuals,
                          zero_basis_snapshot)
from .curves import DiscountCurve, ForwardRateCurve, QuoteLadder
from .errors import (CalibrationError, ConfigurationError, ConventionError, ExtrapolationError, FixingDataError,
                     InputError, OutOfRangeError, PricingError, SchemaError, XccyError)
from .fx import FxForwardCurve, fx_forward, fx_forward_scs, implied_fx_forward_from_deposits
from .instruments import (CashFlow, FloatingRateNote, NonResettableCcs, ResettableCcs, decompose_ncs_to_ccs_plus_frns,
                          decompose_ncs_to_frns, expand_cash_flows)
from .marketdata import (MarketSnapshot, SwapConventions, example_snapshot, example_trade, load_history,
                         load_snapshot, load_trade, save_history, save_snapshot, snapshot_from_dict,
                         snapshot_to_dict)
from .pricer import (ForwardCcsSpreadResult, PricingBreakdown, direct_value, forward_ccs_fair_spread,
                     forward_ccs_market_spread, forward_ccs_scs_spread, npv, price, price_ccs, price_ncs)
from .risk import BumpSpec, RiskReport, curve_delta, delta_ladder, fx_delta, render_report
from .study import fx_study
from .temporal import DayCount, Schedule, generate_schedule, year_fraction
from .valuation import OWN, FundingPolicy, ValuationContext, central, expectation, value

from types import ModuleType as _Module

__all__ = sorted(name for name, obj in globals().items() if not name.startswith("_") and not isinstance(obj, _Module))
