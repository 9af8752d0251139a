#####################################################################
#                                                                   #
# labconfig.py                                                      #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
import os
import configparser
from ast import literal_eval
from pprint import pformat
from pathlib import Path

from frobenius_lab import dedent

CONFIG_ENV_VAR = 'FROBENIUS_LAB_CONFIG'

# Shipped with the package and read before the user file, which then only needs the
# values it changes.
DEFAULT_CONFIG_PATH = Path(__file__).with_name('default_labconfig.ini')


def default_labconfig_path():
    if os.environ.get(CONFIG_ENV_VAR):
        return Path(os.environ[CONFIG_ENV_VAR])
    return Path.home() / '.config' / 'frobenius-lab' / 'labconfig.ini'


class EnvInterpolation(configparser.BasicInterpolation):
    """Interpolation which expands environment variables in values,
    by post-filtering BasicInterpolation.before_get()"""

    def before_get(self, *args):
        value = super(EnvInterpolation, self).before_get(*args)
        return os.path.expandvars(value)


class LabConfig(configparser.ConfigParser):
    NoOptionError = configparser.NoOptionError
    NoSectionError = configparser.NoSectionError

    def __init__(self, config_path=None, required_params=None):
        if config_path is None:
            config_path = default_labconfig_path()
        if required_params is None:
            required_params = {}
        self.config_path = config_path

        self.file_format = ""
        for section, options in required_params.items():
            self.file_format += "[%s]\n" % section
            for option in options:
                self.file_format += "%s = <value>\n" % option

        configparser.ConfigParser.__init__(self, interpolation=EnvInterpolation())
        # A missing user file leaves the packaged values in place:
        self.read([str(DEFAULT_CONFIG_PATH), str(config_path)])

        try:
            for section, options in required_params.items():
                for option in options:
                    self.get(section, option)
        except (configparser.NoOptionError, configparser.NoSectionError):
            msg = f"""The configuration file located at {config_path} does not have
                the required keys. Make sure the config file contains the following
                structure:\n{self.file_format}"""
            raise Exception(dedent(msg))

    def getoptionalint(self, section, option):
        """An integer setting, or None when the value is 'none' or empty"""
        value = self.get(section, option, fallback='').strip()
        if value.lower() in ('', 'none'):
            return None
        return int(value)

    def settings(self):
        """The effective settings as a dict of dicts, for snapshots next to results"""
        return {
            section: {name: self.get(section, name) for name in self.options(section)}
            for section in self.sections()
        }


def _literal(section, name, value):
    text = pformat(value)
    try:
        round_trips = literal_eval(text) == value
    except (ValueError, SyntaxError):
        round_trips = False
    if not round_trips:
        msg = '%s/%s: %r cannot be written as a Python literal'
        raise TypeError(msg % (section, name, value))
    return text


def _plain_parser():
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # preserve case
    return parser


def save_appconfig(filename, data):
    """Write a dict of dicts as an ini file, one section per key and every value as a
    Python literal. Used for the settings snapshot written next to a run record."""
    parser = _plain_parser()
    parser.read_dict(
        {
            section: {name: _literal(section, name, value) for name, value in options.items()}
            for section, options in data.items()
        }
    )
    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w') as f:
        parser.write(f)


def load_appconfig(filename):
    """Inverse of save_appconfig. A missing file gives an empty dict."""
    parser = _plain_parser()
    parser.read(str(filename))
    return {
        section: {name: literal_eval(value) for name, value in parser.items(section)}
        for section in parser.sections()
    }
