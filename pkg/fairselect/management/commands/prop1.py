from importlib import import_module

ExtremeValueCommand = import_module("fairselect.management.commands.extreme-value").Command


class Command(ExtremeValueCommand):
    help = "Same as extreme-value, writing <stem>.csv with the stem defaulting to prop1"
    default_name = "prop1"
