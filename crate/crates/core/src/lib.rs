pub mod covers;
pub mod cusps;
pub mod finquot;
pub mod matgrp;
pub mod planegeom;
pub mod qfield;
pub mod report;
pub mod svg;
