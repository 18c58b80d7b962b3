//! Twisted Kottwitz signs of semisimple groups over a finite unramified model.

pub mod datum;
pub mod sign;

pub use datum::{BasedRootDatum, CartanType, DatumError};
pub use sign::{
    center_image, center_order, coinvariant_class, lambda_t, levi_restriction, sign_induction, sign_product,
    twisted_sign, CenterClass, CenterImage, InductionReport, LeviReport, Normalization, ProductReport, RepChoice, SignError,
    SignReport, TwistData,
};
