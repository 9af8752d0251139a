#####################################################################
#                                                                   #
# setup_logging.py                                                  #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
import sys
import logging

FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def setup_logging(program_name, terminal_level=logging.INFO, stream=None):
    """Configure and return the logger `program_name`. Records go to standard error
    only, so that results written to standard output never share a stream with log
    messages. Library modules log under the 'frobenius_lab' logger, which gets the same
    handler."""
    if isinstance(terminal_level, str):
        terminal_level = logging.getLevelName(terminal_level.upper())
        if not isinstance(terminal_level, int):
            raise ValueError('unknown log level %s' % terminal_level)
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(logging.Formatter(FORMAT))
    handler.setLevel(terminal_level)
    loggers = [logging.getLogger(program_name)]
    if program_name != 'frobenius_lab':
        loggers.append(logging.getLogger('frobenius_lab'))
    for logger in loggers:
        # Clear any previously added handlers from the logger:
        for old in logger.handlers[:]:
            logger.removeHandler(old)
        logger.addHandler(handler)
        logger.setLevel(logging.DEBUG)
        logger.propagate = False
    return loggers[0]
