"""Built-in building blocks for suite generation.

Real case-study trees of this size exist in the literature but are not
redistributable, so the library ships synthetic blocks with matching node
counts (8 to 25), a mix of treelike and shared-step shapes, static and
sequential gates, plus the Trojan-war classic.  All blocks are satisfiable
and carry fixed integer durations.
"""

from __future__ import annotations

from .dsl import parse_dat
from .model import Dat

TROJAN = """\
# storm Troy: ram it, sneak in, or wait them out
or   root ram horse s
sand ram   w r a
sand horse w h t
bas  w 2
bas  r 3
bas  a 2
bas  h 3
bas  t 1
bas  s 3652
"""

_RELAY_12 = """\
or   b1root  b1side b1seq
and  b1side  b1key b1net b1probe
sand b1seq   b1net b1run
or   b1run   b1fast b1slow b1creep
and  b1probe b1scan b1map
bas  b1key 4
bas  b1net 3
bas  b1fast 2
bas  b1slow 6
bas  b1creep 9
bas  b1scan 2
bas  b1map 5
"""

_LAYERS_20 = """\
and  b2root b2left b2right
sand b2left b2gain b2use
or   b2gain b2cred b2forge
and  b2use  b2login b2pivot
or   b2right b2door b2deep
sand b2deep b2pivot b2sweep
and  b2cred b2phish b2wait
or   b2sweep b2grab b2lift
or   b2door b2smash b2picklock
and  b2lift b2tool b2carry
bas  b2forge 7
bas  b2login 2
bas  b2pivot 3
bas  b2phish 3
bas  b2wait 4
bas  b2grab 2
bas  b2smash 8
bas  b2picklock 5
bas  b2tool 2
bas  b2carry 4
"""

_TWIN_12 = """\
and  b3root b3a b3b b3extra
or   b3a b3shared b3x
or   b3b b3shared b3w
and  b3x b3u b3v b3t
and  b3w b3p b3q
bas  b3shared 5
bas  b3u 2
bas  b3v 3
bas  b3t 1
bas  b3p 4
bas  b3q 1
bas  b3extra 8
"""

_SPEAR_16 = """\
sand b4root b4recon b4strike b4clean
or   b4recon b4scan b4social
and  b4strike b4breach b4loot
or   b4breach b4zero b4brute
and  b4clean b4wipe b4exit
and  b4social b4profile b4bait
or   b4loot b4db b4files
bas  b4scan 3
bas  b4zero 2
bas  b4brute 8
bas  b4db 2
bas  b4files 5
bas  b4wipe 1
bas  b4exit 1
bas  b4profile 2
bas  b4bait 4
"""

_DASH_8 = """\
sand b5root b5in b5out
or   b5in  b5door b5window
and  b5out b5grab b5run b5bag
bas  b5door 2
bas  b5window 4
bas  b5grab 1
bas  b5run 2
bas  b5bag 3
"""

_CANOPY_21 = """\
or   b6root b6path1 b6path2 b6path3
and  b6path1 b6k1 b6k2 b6k3
and  b6path2 b6m1 b6m2
or   b6path3 b6n1 b6deep
and  b6deep b6d1 b6d2 b6d3
or   b6k1 b6k1a b6k1b
or   b6m1 b6m1a b6m1b
and  b6n1 b6n1a b6n1b b6n1c
bas  b6k2 5
bas  b6k3 3
bas  b6m1a 4
bas  b6m1b 8
bas  b6m2 7
bas  b6n1a 3
bas  b6n1b 5
bas  b6n1c 2
bas  b6d1 2
bas  b6d2 3
bas  b6d3 4
bas  b6k1a 4
bas  b6k1b 6
"""

_GRAND_25 = """\
or   b7root b7fast b7slow
sand b7fast b7prep b7hit
and  b7prep b7tool b7intel
or   b7hit  b7smash b7sneak
and  b7slow b7camp b7drain b7final
sand b7drain b7cut b7bleed
or   b7camp b7tents b7fort b7cave
and  b7sneak b7mask b7slip
or   b7tool b7buy b7steal
and  b7fort b7wall b7gate
or   b7final b7siege b7treaty
bas  b7intel 3
bas  b7smash 6
bas  b7mask 2
bas  b7slip 3
bas  b7cut 4
bas  b7bleed 5
bas  b7tents 2
bas  b7cave 4
bas  b7wall 3
bas  b7gate 2
bas  b7siege 9
bas  b7treaty 6
bas  b7buy 5
bas  b7steal 2
"""

_BRAID_20 = """\
and  b8root b8wing1 b8wing2
sand b8wing1 b8w1a b8w1b
or   b8w1a b8q1 b8q2
sand b8wing2 b8w2a b8w2b b8w2c b8w2d
or   b8w2b b8r1 b8r2
and  b8q1 b8s1 b8s2
or   b8r2 b8t1 b8t2 b8t3
and  b8w2c b8u1 b8u2
bas  b8w1b 4
bas  b8w2a 2
bas  b8w2d 3
bas  b8q2 5
bas  b8s1 3
bas  b8s2 2
bas  b8r1 2
bas  b8t1 1
bas  b8t2 4
bas  b8t3 7
bas  b8u1 2
bas  b8u2 5
"""

_FORK_15 = """\
and  b9root b9stage1 b9stage2
or   b9stage1 b9e1 b9e2 b9e3 b9e4
and  b9stage2 b9f1 b9f2
or   b9f1 b9g1 b9g2
and  b9e2 b9h1 b9h2
or   b9f2 b9i1 b9i2
bas  b9e1 8
bas  b9e3 5
bas  b9e4 7
bas  b9g1 3
bas  b9g2 6
bas  b9h1 2
bas  b9h2 3
bas  b9i1 4
bas  b9i2 2
"""

BLOCK_SOURCES: dict[str, str] = {
    "trojan": TROJAN,
    "relay_12": _RELAY_12,
    "layers_20": _LAYERS_20,
    "twin_12": _TWIN_12,
    "spear_16": _SPEAR_16,
    "dash_8": _DASH_8,
    "canopy_21": _CANOPY_21,
    "grand_25": _GRAND_25,
    "braid_20": _BRAID_20,
    "fork_15": _FORK_15,
}

BLOCK_NAMES: tuple[str, ...] = tuple(sorted(BLOCK_SOURCES))

_cache: dict[str, Dat] = {}


def block(name: str) -> Dat:
    if name not in _cache:
        _cache[name] = parse_dat(BLOCK_SOURCES[name])
    return _cache[name]
