import logging
import os
import sys

FORMAT = '%(asctime)s - %(message)s'
DATE_FORMAT = '%d-%b-%y %H:%M:%S'


class Logging:
    '''
    Package logger for nfold. Records go to stderr, so solver output on
    stdout stays machine readable, and optionally to a log file as well.

    :param log_level: level name understood by :mod:`logging`, e.g. ``INFO``
    :type log_level: str

    :param filename: also append records to this file; its directory is
                     created when missing
    :type filename: str
    '''

    def __init__(self, log_level, filename: str = None, name: str = 'nfold'):
        self.log_level = log_level
        self.filename = filename
        self.logger = logging.getLogger(name)
        if filename:
            self.__check_log_dir(filename)

    def __check_log_dir(self, path: str):
        folder = os.path.dirname(path)
        if folder and not os.path.exists(folder):
            os.makedirs(folder)

    def __handlers(self):
        handlers = [logging.StreamHandler(sys.stderr)]
        if self.filename:
            handlers.append(logging.FileHandler(self.filename))
        formatter = logging.Formatter(FORMAT, datefmt=DATE_FORMAT)
        for handler in handlers:
            handler.setFormatter(formatter)
        return handlers

    def get_logger(self):
        if not self.logger.handlers:
            for handler in self.__handlers():
                self.logger.addHandler(handler)
        self.logger.setLevel(self.log_level)
        self.logger.propagate = False
        return self.logger
